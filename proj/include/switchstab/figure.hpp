#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "switchstab/bounds.hpp"

namespace switchstab {

/// One classified point of the interleaved parameter scan: the family
/// points t_2, s_2, t_3, ..., t_nmax, s_nmax, t_(nmax+1) in strictly
/// decreasing parameter order.
struct FigureRow {
    int n = 0;
    std::string kind; // "t_n" or "s_n"
    double t_value = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double best_lower = 0.0;
    double best_upper = 0.0;
};

/// Classifies every row by exhaustive bounds at the given depth, with the
/// lower bound additionally seeded by the family's periodic witness word
/// (one period). Any single word is valid lower-bound evidence, and the
/// shortest witness has length n+2, which blind enumeration cannot reach
/// at modest depths once n is large.
std::vector<FigureRow> figure_rows(int n_max, int depth, double tolerance = 1e-9,
                                   std::uint64_t budget = 2'000'000);

/// CSV with header n,kind,t_value,verdict,best_lower,best_upper and
/// 17-significant-digit values.
std::string figure_csv(const std::vector<FigureRow>& rows);

} // namespace switchstab
