#include "switchstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "switchstab/kernels.hpp"
#include "switchstab/linalg.hpp"

namespace switchstab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ProvenUnstable: return "ProvenUnstable";
        case Verdict::LikelyStable: return "LikelyStable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Verdict classify(double best_lower, double best_upper, double tolerance) {
    if (best_lower > 1.0 + tolerance) return Verdict::ProvenUnstable;
    if (best_upper < 1.0 - tolerance) return Verdict::LikelyStable;
    return Verdict::Inconclusive;
}

namespace {

// Total word count sum_{n=1..depth} M^n, saturating at cap+1.
std::uint64_t total_words(int m, int depth, std::uint64_t cap) {
    std::uint64_t total = 0;
    std::uint64_t level = 1;
    for (int n = 1; n <= depth; ++n) {
        if (level > cap / static_cast<std::uint64_t>(m)) return cap + 1;
        level *= static_cast<std::uint64_t>(m);
        if (total > cap - level) return cap + 1;
        total += level;
    }
    return total;
}

void check_budget(int m, int depth, std::uint64_t budget) {
    if (total_words(m, depth, budget) <= budget) return;
    int feasible = 0;
    while (feasible < depth && total_words(m, feasible + 1, budget) <= budget) ++feasible;
    throw BudgetExceeded("stability_bounds: depth " + std::to_string(depth) + " needs more than " +
                         std::to_string(budget) + " products; largest feasible depth for M=" +
                         std::to_string(m) + " is " + std::to_string(feasible));
}

// Word whose enumeration index at the given depth is `index`: little-endian
// base-M digits, each +1. Matches the level layout built by the batch path
// (new leftmost factor = most significant digit) and the DFS path alike.
Word word_from_index(std::uint64_t index, int depth, int m) {
    Word w;
    w.indices.resize(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k) {
        w.indices[static_cast<std::size_t>(k)] =
            static_cast<int>(index % static_cast<std::uint64_t>(m)) + 1;
        index /= static_cast<std::uint64_t>(m);
    }
    return w;
}

struct DepthMax {
    double value = -1.0;
    std::uint64_t index = 0;
};

BoundsReport finalize(const MatrixClass& cls, const BoundsOptions& opt,
                      const std::vector<DepthMax>& norm_max,
                      const std::vector<DepthMax>& rho_max,
                      std::uint64_t realized) {
    BoundsReport rep;
    rep.depth = opt.depth;
    rep.tolerance = opt.tolerance;
    rep.products_realized = realized;
    rep.best_upper = std::numeric_limits<double>::infinity();
    rep.best_lower = 0.0;
    int witness_depth = 0;
    for (int n = 1; n <= opt.depth; ++n) {
        const DepthMax& nm = norm_max[static_cast<std::size_t>(n - 1)];
        const DepthMax& rm = rho_max[static_cast<std::size_t>(n - 1)];
        const double up = std::pow(std::max(nm.value, 0.0), 1.0 / n);
        const double lo = std::pow(std::max(rm.value, 0.0), 1.0 / n);
        rep.upper_per_depth.push_back(up);
        rep.lower_per_depth.push_back(lo);
        rep.best_upper = std::min(rep.best_upper, up);
        if (lo > rep.best_lower) {
            rep.best_lower = lo;
            witness_depth = n;
        }
    }
    if (witness_depth > 0) {
        rep.witness_lower = word_from_index(
            rho_max[static_cast<std::size_t>(witness_depth - 1)].index, witness_depth,
            cls.size());
    }
    if (rep.best_lower > rep.best_upper + 1e-9) {
        throw Error("stability_bounds: lower bound exceeds upper bound (numerics bug)");
    }
    rep.verdict = classify(rep.best_lower, rep.best_upper, opt.tolerance);
    return rep;
}

// Level-order traversal over Soa2x2 buffers; one batched multiply per word.
BoundsReport bounds_batch2(const MatrixClass& cls, const BoundsOptions& opt) {
    const Kernels& k = active_kernels();
    const int m = cls.size();
    double members[/*m*/ 64][4];
    for (int i = 0; i < m; ++i) {
        members[i][0] = cls[i].at(0, 0);
        members[i][1] = cls[i].at(0, 1);
        members[i][2] = cls[i].at(1, 0);
        members[i][3] = cls[i].at(1, 1);
    }

    std::vector<DepthMax> norm_max(static_cast<std::size_t>(opt.depth));
    std::vector<DepthMax> rho_max(static_cast<std::size_t>(opt.depth));
    std::uint64_t realized = 0;

    Soa2x2 cur, next;
    cur.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        cur.a[static_cast<std::size_t>(i)] = members[i][0];
        cur.b[static_cast<std::size_t>(i)] = members[i][1];
        cur.c[static_cast<std::size_t>(i)] = members[i][2];
        cur.d[static_cast<std::size_t>(i)] = members[i][3];
    }

    std::vector<double> values;
    for (int n = 1; n <= opt.depth; ++n) {
        if (n > 1) {
            next.resize(cur.size() * static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                k.mul_left(members[j], cur, next, static_cast<std::size_t>(j) * cur.size(),
                           cur.size());
            }
            std::swap(cur, next);
        }
        realized += cur.size();
        values.resize(cur.size());

        k.opnorm(cur, values.data(), cur.size());
        DepthMax& nm = norm_max[static_cast<std::size_t>(n - 1)];
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > nm.value) {
                nm.value = values[i];
                nm.index = i;
            }
        }

        k.specrad(cur, values.data(), cur.size());
        DepthMax& rm = rho_max[static_cast<std::size_t>(n - 1)];
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > rm.value) {
                rm.value = values[i];
                rm.index = i;
            }
        }
    }
    return finalize(cls, opt, norm_max, rho_max, realized);
}

// Depth-first traversal for general dimension; left-multiplies an
// accumulator so each word still costs one multiply. `weight` is M^(n-1),
// the digit weight of the factor appended at depth n (the new leftmost
// factor is the most significant digit of the enumeration index).
void dfs_generic(const MatrixClass& cls, const Mat& acc, std::uint64_t index,
                 std::uint64_t weight, int n, int depth, std::vector<DepthMax>& norm_max,
                 std::vector<DepthMax>& rho_max, std::uint64_t& realized) {
    const int m = cls.size();
    for (int j = 0; j < m; ++j) {
        const Mat prod = cls[j] * acc;
        const std::uint64_t child = index + static_cast<std::uint64_t>(j) * weight;
        ++realized;

        const double nv = operator_norm(prod);
        DepthMax& nm = norm_max[static_cast<std::size_t>(n - 1)];
        if (nv > nm.value) {
            nm.value = nv;
            nm.index = child;
        }
        const double rv = spectral_radius(prod);
        DepthMax& rm = rho_max[static_cast<std::size_t>(n - 1)];
        if (rv > rm.value) {
            rm.value = rv;
            rm.index = child;
        }
        if (n < depth) {
            dfs_generic(cls, prod, child, weight * static_cast<std::uint64_t>(m), n + 1,
                        depth, norm_max, rho_max, realized);
        }
    }
}

BoundsReport bounds_generic(const MatrixClass& cls, const BoundsOptions& opt) {
    std::vector<DepthMax> norm_max(static_cast<std::size_t>(opt.depth));
    std::vector<DepthMax> rho_max(static_cast<std::size_t>(opt.depth));
    std::uint64_t realized = 0;
    dfs_generic(cls, Mat::identity(cls.dim()), 0, 1, 1, opt.depth, norm_max, rho_max,
                realized);
    return finalize(cls, opt, norm_max, rho_max, realized);
}

} // namespace

BoundsReport stability_bounds(const MatrixClass& cls, const BoundsOptions& opt) {
    if (opt.depth < 1) throw InvalidInput("stability_bounds: depth must be >= 1");
    if (cls.size() > 64) throw InvalidInput("stability_bounds: at most 64 members supported");
    check_budget(cls.size(), opt.depth, opt.budget);
    if (cls.dim() == 2 && opt.use_batch_kernels) return bounds_batch2(cls, opt);
    return bounds_generic(cls, opt);
}

} // namespace switchstab
