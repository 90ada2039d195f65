#include "switchstab/norm_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "switchstab/bounds.hpp"
#include "switchstab/linalg.hpp"
#include "switchstab/rng.hpp"

namespace switchstab {

namespace {

// Two level-n products are the same up to the dedup tolerance
// 1e-12 * (1 + max entry magnitude of the pair).
bool same_product(const Mat& a, const Mat& b) {
    const double tol = 1e-12 * (1.0 + std::max(a.max_abs(), b.max_abs()));
    return max_abs_diff(a, b) <= tol;
}

} // namespace

NormApprox NormApprox::build(MatrixClass cls, double q, int depth, std::uint64_t budget) {
    if (!(q > 0.0)) throw InvalidInput("NormApprox: q must be positive");
    if (q > 1.0) throw InvalidInput("NormApprox: q must not exceed 1");
    if (depth < 0) throw InvalidInput("NormApprox: depth must be >= 0");

    NormApprox na(std::move(cls), q, depth);
    const MatrixClass& c = na.cls_;
    na.levels_.resize(static_cast<std::size_t>(depth) + 1);
    na.levels_[0].push_back(Mat::identity(c.dim()));

    std::uint64_t realized = 0;
    for (int n = 1; n <= depth; ++n) {
        const std::vector<Mat>& prev = na.levels_[static_cast<std::size_t>(n - 1)];
        std::vector<Mat>& cur = na.levels_[static_cast<std::size_t>(n)];
        realized += static_cast<std::uint64_t>(prev.size()) *
                    static_cast<std::uint64_t>(c.size());
        if (realized > budget) {
            throw BudgetExceeded("NormApprox: level " + std::to_string(n) +
                                 " would exceed the product budget of " +
                                 std::to_string(budget));
        }
        for (int k = 0; k < c.size(); ++k) {
            for (const Mat& b : prev) {
                Mat p = c[k] * b;
                bool duplicate = false;
                for (const Mat& existing : cur) {
                    if (same_product(existing, p)) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) cur.push_back(std::move(p));
            }
        }
    }

    if (c.dim() == 2) {
        na.levels2_.resize(na.levels_.size());
        for (std::size_t n = 0; n < na.levels_.size(); ++n) {
            for (const Mat& p : na.levels_[n]) na.levels2_[n].push_back(p);
        }
    }
    return na;
}

NormApprox NormApprox::build_auto_q(MatrixClass cls, int depth, std::uint64_t budget) {
    BoundsOptions opt;
    opt.depth = std::max(1, (depth + 1) / 2);
    opt.budget = budget;
    const BoundsReport rep = stability_bounds(cls, opt);
    const double q = rep.best_upper + 1e-6;
    if (q > 1.0) {
        throw InvalidInput(
            "NormApprox: automatic q = " + std::to_string(q) +
            " exceeds 1; the class is not certified contractive at depth " +
            std::to_string(opt.depth));
    }
    return build(std::move(cls), q, depth, budget);
}

std::vector<std::size_t> NormApprox::level_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(levels_.size());
    for (const auto& l : levels_) sizes.push_back(l.size());
    return sizes;
}

double NormApprox::evaluate_truncated(const Vec& x, int max_level) const {
    if (x.dim() != cls_.dim()) throw InvalidInput("NormApprox: dimension mismatch");
    if (max_level < 0 || max_level > depth_) {
        throw InvalidInput("NormApprox: truncation level out of range");
    }
    double best = 0.0;
    double level_scale = 1.0; // q^(-n)
    if (!levels2_.empty()) {
        const Kernels& k = active_kernels();
        const double x0 = x[0], x1 = x[1];
        for (int n = 0; n <= max_level; ++n) {
            const Soa2x2& level = levels2_[static_cast<std::size_t>(n)];
            const double m2 = k.max_matvec_norm_sq(level, x0, x1, level.size());
            best = std::max(best, level_scale * std::sqrt(m2));
            level_scale /= q_;
        }
        return best;
    }
    for (int n = 0; n <= max_level; ++n) {
        for (const Mat& b : levels_[static_cast<std::size_t>(n)]) {
            best = std::max(best, level_scale * b.apply(x).norm());
        }
        level_scale /= q_;
    }
    return best;
}

double NormApprox::evaluate(const Vec& x) const { return evaluate_truncated(x, depth_); }

double NormApprox::bound_constant() const {
    double c = 0.0;
    double level_scale = 1.0;
    for (int n = 0; n <= depth_; ++n) {
        for (const Mat& b : levels_[static_cast<std::size_t>(n)]) {
            c = std::max(c, level_scale * operator_norm(b));
        }
        level_scale /= q_;
    }
    return c;
}

ContractionReport verify_contraction(const NormApprox& na, int member_k,
                                     const std::vector<Vec>& samples) {
    const MatrixClass& cls = na.matrix_class();
    if (member_k < 1 || member_k > cls.size()) {
        throw InvalidInput("verify_contraction: member index outside 1..M");
    }
    if (na.depth() < 1) throw InvalidInput("verify_contraction: depth must be >= 1");

    ContractionReport rep;
    rep.member = member_k;
    rep.samples = static_cast<int>(samples.size());
    rep.max_truncated_violation = -std::numeric_limits<double>::infinity();
    rep.max_full_violation = -std::numeric_limits<double>::infinity();
    const Mat& ak = cls[member_k - 1];
    for (const Vec& x : samples) {
        const Vec ax = ak.apply(x);
        const double rhs = na.q() * na.evaluate(x);
        const double truncated = na.evaluate_truncated(ax, na.depth() - 1) - rhs;
        const double full = na.evaluate(ax) - rhs;
        if (truncated > rep.max_truncated_violation) {
            rep.max_truncated_violation = truncated;
            rep.worst_truncated_x = x;
        }
        if (full > rep.max_full_violation) {
            rep.max_full_violation = full;
            rep.worst_full_x = x;
        }
    }
    if (samples.empty()) {
        rep.max_truncated_violation = 0.0;
        rep.max_full_violation = 0.0;
    }
    return rep;
}

std::vector<Vec> contraction_samples(int dim, int count, std::uint64_t seed) {
    return rng::sphere_samples_with_axes(dim, count, seed);
}

} // namespace switchstab
