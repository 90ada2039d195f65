#pragma once

#include <optional>
#include <string>
#include <vector>

#include "switchstab/bounds.hpp"
#include "switchstab/system.hpp"

namespace switchstab {

/// Row entries of the two 2x2 mixing matrices: A_1 is the identity with row
/// 1 replaced by (a11, a12), A_2 with row 2 replaced by (a21, a22).
struct MixParams2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

/// Mixing class of dimension N: member i is the identity with row i
/// replaced by rows[i-1].
struct MixClassSpec {
    int n = 0;
    std::vector<std::vector<double>> rows;
};

/// Identity with row i (1-based) replaced by the spec's row i.
Mat mixing_matrix(const MixClassSpec& spec, int row);

/// The full class {A_1, ..., A_N}.
MatrixClass mixing_class(const MixClassSpec& spec);
MatrixClass mixing_class(const MixParams2& p);

/// Which relation system matched (testing in the fixed order a..e); the
/// verdict itself is the OR of the cases and independent of the order.
enum class R2Case { A, B, C, D, E, None };
const char* to_string(R2Case c);

struct R2Verdict {
    bool stable = false;
    R2Case matched = R2Case::None;
};

/// Exact verdict for N=2 mixing classes. tau widens every comparison:
/// equalities become |lhs - rhs| <= tau, inequalities gain tau of slack
/// (strict ones stay strict). tau = 0 is the criterion verbatim.
R2Verdict r2_criterion(const MixParams2& p, double tau = 0.0);

struct PerronResult {
    double root = 0.0;
    int iterations = 0;
};

/// Dominant eigenvalue of an entrywise-positive matrix via power iteration
/// with ratio sandwich bounds (min/max of (Ax)_i / x_i enclose the root).
PerronResult perron_root(const Mat& a, double tol = 1e-12, int max_iter = 200'000);

struct RPlusVerdict {
    bool stable = false;
    double perron_root = 0.0;
};

/// Verdict for positive mixing classes: stable iff the Perron root of the
/// assembled row matrix (a_ij) is at most 1 + tau. Rejects non-positive
/// entries, which the criterion's hypothesis requires.
RPlusVerdict rplus_criterion(const MixClassSpec& spec, double tau = 0.0);

/// Empirical consistency between a criterion verdict and enumeration
/// bounds. A criterion-stable class whose lower bound rises above 1 is a
/// hard contradiction; an unstable verdict that enumeration cannot witness
/// at this depth is only flagged.
struct CrossValidation {
    bool criterion_stable = false;
    std::optional<R2Case> matched_case;
    double perron = 0.0; // only for the positive-class route
    BoundsReport bounds;
    bool witnessed = false;         // lower bound > 1 - 1e-6 somewhere
    bool hard_contradiction = false;
};

CrossValidation cross_validate(const MixParams2& p, int depth, double tau = 0.0,
                               const BoundsOptions& base = {});
CrossValidation cross_validate(const MixClassSpec& spec, int depth, double tau = 0.0,
                               const BoundsOptions& base = {});

} // namespace switchstab
