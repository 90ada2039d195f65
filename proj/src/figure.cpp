#include "switchstab/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "switchstab/families.hpp"
#include "switchstab/linalg.hpp"

namespace switchstab {

namespace {

FigureRow classify_point(int n, const char* kind, double t, int depth, double tolerance,
                         std::uint64_t budget) {
    const MatrixClass cls = family::family_class(t);
    BoundsOptions opt;
    opt.depth = depth;
    opt.tolerance = tolerance;
    opt.budget = budget;
    const BoundsReport rep = stability_bounds(cls, opt);

    FigureRow row;
    row.n = n;
    row.kind = kind;
    row.t_value = t;
    row.best_upper = rep.best_upper;
    row.best_lower = rep.best_lower;

    const Word witness = family::periodic_witness_word(n, 1);
    const double rho = spectral_radius(realize_word(cls, witness));
    const double witness_lower =
        std::pow(std::max(rho, 0.0), 1.0 / static_cast<double>(witness.length()));
    row.best_lower = std::max(row.best_lower, witness_lower);

    row.verdict = classify(row.best_lower, row.best_upper, tolerance);
    return row;
}

} // namespace

std::vector<FigureRow> figure_rows(int n_max, int depth, double tolerance,
                                   std::uint64_t budget) {
    if (n_max < 2) throw InvalidInput("figure_rows: n_max must be >= 2");
    std::vector<FigureRow> rows;
    rows.reserve(2 * static_cast<std::size_t>(n_max) - 1);
    for (int n = 2; n <= n_max; ++n) {
        rows.push_back(classify_point(n, "t_n", family::stable_parameter(n), depth,
                                      tolerance, budget));
        rows.push_back(classify_point(n, "s_n", family::unstable_parameter(n), depth,
                                      tolerance, budget));
    }
    rows.push_back(classify_point(n_max + 1, "t_n", family::stable_parameter(n_max + 1),
                                  depth, tolerance, budget));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].t_value < rows[i - 1].t_value)) {
            throw Error("figure_rows: parameter values not strictly decreasing");
        }
    }
    return rows;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
    std::string out = "n,kind,t_value,verdict,best_lower,best_upper\n";
    char buf[160];
    for (const FigureRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%.17g,%s,%.17g,%.17g\n", r.n, r.kind.c_str(),
                      r.t_value, to_string(r.verdict), r.best_lower, r.best_upper);
        out += buf;
    }
    return out;
}

} // namespace switchstab
