#pragma once

#include <cstdint>
#include <vector>

#include "switchstab/system.hpp"

namespace switchstab {

enum class Verdict {
    ProvenUnstable, // some product has spectral radius root above 1
    LikelyStable,   // norm bound certifies exponential decay
    Inconclusive,   // bounds straddle 1 at this depth
};

const char* to_string(Verdict v);

struct BoundsOptions {
    int depth = 8;
    double tolerance = 1e-9;
    std::uint64_t budget = 2'000'000; // realized products per call, hard cap
    bool use_batch_kernels = true;    // 2x2 fast path; generic path otherwise
};

/// Per-depth spectral bounds over all words up to a depth.
///
/// upper_per_depth[n-1] = max over |w| = n of |A_w|^(1/n)   (norm evidence)
/// lower_per_depth[n-1] = max over |w| = n of rho(A_w)^(1/n) (radius evidence)
struct BoundsReport {
    int depth = 0;
    double tolerance = 0.0;
    std::vector<double> upper_per_depth;
    std::vector<double> lower_per_depth;
    double best_upper = 0.0; // min over depths
    double best_lower = 0.0; // max over depths
    Word witness_lower;      // word achieving best_lower
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t products_realized = 0;
};

/// Exhaustive enumeration of all words of length 1..depth. Costs one matrix
/// multiply per word; fails loudly (BudgetExceeded) when the word count
/// would exceed the budget, naming the largest feasible depth.
BoundsReport stability_bounds(const MatrixClass& cls, const BoundsOptions& opt);

/// Verdict from already-computed bounds at a tolerance.
Verdict classify(double best_lower, double best_upper, double tolerance);

} // namespace switchstab
