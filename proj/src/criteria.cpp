#include "switchstab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace switchstab {

Mat mixing_matrix(const MixClassSpec& spec, int row) {
    if (spec.n < 1) throw InvalidInput("mixing_matrix: dimension must be >= 1");
    if (static_cast<int>(spec.rows.size()) != spec.n) {
        throw InvalidInput("mixing_matrix: need exactly N rows");
    }
    if (row < 1 || row > spec.n) throw InvalidInput("mixing_matrix: row index outside 1..N");
    const std::vector<double>& r = spec.rows[static_cast<std::size_t>(row - 1)];
    if (static_cast<int>(r.size()) != spec.n) {
        throw InvalidInput("mixing_matrix: row length must equal N");
    }
    Mat m = Mat::identity(spec.n);
    for (int j = 0; j < spec.n; ++j) {
        const double v = r[static_cast<std::size_t>(j)];
        if (!std::isfinite(v)) throw InvalidInput("mixing_matrix: non-finite entry");
        m.at(row - 1, j) = v;
    }
    return m;
}

MatrixClass mixing_class(const MixClassSpec& spec) {
    std::vector<Mat> members;
    members.reserve(static_cast<std::size_t>(spec.n));
    for (int i = 1; i <= spec.n; ++i) members.push_back(mixing_matrix(spec, i));
    return MatrixClass(std::move(members));
}

MatrixClass mixing_class(const MixParams2& p) {
    MixClassSpec spec;
    spec.n = 2;
    spec.rows = {{p.a11, p.a12}, {p.a21, p.a22}};
    return mixing_class(spec);
}

const char* to_string(R2Case c) {
    switch (c) {
        case R2Case::A: return "a";
        case R2Case::B: return "b";
        case R2Case::C: return "c";
        case R2Case::D: return "d";
        case R2Case::E: return "e";
        case R2Case::None: return "none";
    }
    return "none";
}

namespace {

// Comparison helpers under the tau widening. Strict inequalities stay
// strict so tau = 0 reproduces the criterion exactly.
bool eq(double x, double c, double tau) { return std::fabs(x - c) <= tau; }
bool le(double lhs, double rhs, double tau) { return lhs <= rhs + tau; }
bool lt(double lhs, double rhs, double tau) { return lhs < rhs + tau; }

} // namespace

R2Verdict r2_criterion(const MixParams2& p, double tau) {
    if (tau < 0.0) throw InvalidInput("r2_criterion: tau must be >= 0");
    const double a11 = p.a11, a12 = p.a12, a21 = p.a21, a22 = p.a22;

    if (eq(a11, 1.0, tau) && eq(a12, 0.0, tau) && eq(a21, 0.0, tau) && eq(a22, 1.0, tau)) {
        return {true, R2Case::A};
    }
    if (eq(a11, 1.0, tau) && eq(a12, 0.0, tau) && eq(a22, -1.0, tau)) {
        return {true, R2Case::B};
    }
    if (eq(a11, -1.0, tau) && eq(a21, 0.0, tau) && eq(a22, 1.0, tau)) {
        return {true, R2Case::C};
    }
    if (eq(a11, -1.0, tau) && eq(a22, -1.0, tau) && le(0.0, a12, tau) && le(0.0, a21, tau) &&
        lt(a12, 4.0, tau) && lt(a21, 4.0, tau)) {
        return {true, R2Case::D};
    }
    if (lt(std::fabs(a11), 1.0, tau) && lt(std::fabs(a22), 1.0, tau)) {
        const double prod = a12 * a21;
        const double lo = -(1.0 - std::fabs(a11)) * (1.0 - std::fabs(a22));
        const double hi = (1.0 - a11) * (1.0 - a22);
        if (le(lo, prod, tau) && le(prod, hi, tau)) return {true, R2Case::E};
    }
    return {false, R2Case::None};
}

PerronResult perron_root(const Mat& a, double tol, int max_iter) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!(a.at(i, j) > 0.0)) {
                throw InvalidInput("perron_root: matrix must be entrywise positive");
            }
        }
    }
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0;
    PerronResult res;
    for (int it = 1; it <= max_iter; ++it) {
        const Vec y = a.apply(x);
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        res.iterations = it;
        res.root = 0.5 * (lo + hi);
        // The ratio extremes sandwich the root for positive matrices.
        if (hi - lo <= tol * std::max(res.root, 1e-300)) return res;
        const double scale = 1.0 / y.norm();
        x = y.scaled(scale);
    }
    throw NotConverged("perron_root: ratio bounds did not close within " +
                       std::to_string(max_iter) + " iterations");
}

RPlusVerdict rplus_criterion(const MixClassSpec& spec, double tau) {
    if (tau < 0.0) throw InvalidInput("rplus_criterion: tau must be >= 0");
    if (spec.n < 1 || static_cast<int>(spec.rows.size()) != spec.n) {
        throw InvalidInput("rplus_criterion: need exactly N rows of length N");
    }
    Mat a(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        if (static_cast<int>(spec.rows[static_cast<std::size_t>(i)].size()) != spec.n) {
            throw InvalidInput("rplus_criterion: need exactly N rows of length N");
        }
        for (int j = 0; j < spec.n; ++j) {
            const double v = spec.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!std::isfinite(v) || !(v > 0.0)) {
                throw InvalidInput("rplus_criterion: entries must be positive");
            }
            a.at(i, j) = v;
        }
    }
    RPlusVerdict v;
    v.perron_root = perron_root(a, 1e-12).root;
    v.stable = v.perron_root <= 1.0 + tau;
    return v;
}

namespace {

CrossValidation cross_validate_impl(const MatrixClass& cls, bool criterion_stable,
                                    int depth, const BoundsOptions& base) {
    BoundsOptions opt = base;
    opt.depth = depth;
    CrossValidation cv;
    cv.criterion_stable = criterion_stable;
    cv.bounds = stability_bounds(cls, opt);
    cv.witnessed = cv.bounds.best_lower > 1.0 - 1e-6;
    const bool lower_breaks_one = cv.bounds.best_lower > 1.0 + 1e-6;
    cv.hard_contradiction = criterion_stable && lower_breaks_one;
    return cv;
}

} // namespace

CrossValidation cross_validate(const MixParams2& p, int depth, double tau,
                               const BoundsOptions& base) {
    const R2Verdict verdict = r2_criterion(p, tau);
    CrossValidation cv = cross_validate_impl(mixing_class(p), verdict.stable, depth, base);
    cv.matched_case = verdict.matched;
    return cv;
}

CrossValidation cross_validate(const MixClassSpec& spec, int depth, double tau,
                               const BoundsOptions& base) {
    const RPlusVerdict verdict = rplus_criterion(spec, tau);
    CrossValidation cv =
        cross_validate_impl(mixing_class(spec), verdict.stable, depth, base);
    cv.perron = verdict.perron_root;
    return cv;
}

} // namespace switchstab
