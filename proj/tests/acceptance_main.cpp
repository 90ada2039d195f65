// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here; nothing defers to later calibration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "switchstab/bounds.hpp"
#include "switchstab/criteria.hpp"
#include "switchstab/families.hpp"
#include "switchstab/figure.hpp"
#include "switchstab/linalg.hpp"
#include "switchstab/norm_approx.hpp"
#include "switchstab/rng.hpp"

using namespace switchstab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& message) {
        if (!cond && pass) {
            pass = false;
            detail = message;
        }
    }
    void note(const std::string& message) {
        if (pass) detail = message;
    }
};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

// --- 1. master identity over the (m, angle) grid -------------------------

Outcome criterion_master_identity() {
    Outcome out;
    double worst = 0.0;
    for (int gi = 1; gi <= 200; ++gi) {
        const double phi = 1.4 * gi / 201.0;
        for (int m = 0; m <= 50; ++m) {
            worst = std::max(worst, family::check_master_identity(m, phi));
        }
    }
    out.require(worst <= 1e-10, "worst residual " + fmt("%.3e", worst));
    out.note("worst residual " + fmt("%.3e", worst));
    return out;
}

// --- 2. collapse to -sec(phi) P at phi = pi/(2n+1) ------------------------

Outcome criterion_odd_collapse() {
    Outcome out;
    double worst = 0.0;
    for (int n = 1; n <= 30; ++n) {
        const double phi = kPi / (2.0 * n + 1.0);
        const Mat p = family::projector(phi);
        const Mat r = family::rotation(phi);
        Mat acc = p;
        for (int i = 0; i < n; ++i) acc = r * acc;
        acc = p * acc;
        worst = std::max(worst, max_abs_diff(acc, p.scaled(-1.0 / std::cos(phi))));
    }
    out.require(worst <= 1e-10, "worst residual " + fmt("%.3e", worst));
    out.note("worst residual " + fmt("%.3e", worst));
    return out;
}

// --- 3. collapse coefficient periodicity and bound ------------------------

Outcome criterion_collapse_coefficients() {
    Outcome out;
    double worst_period = 0.0;
    double worst_bound = -1.0;
    for (int n = 2; n <= 10; ++n) {
        for (int m = 0; m <= 30; ++m) {
            const double lam = family::collapse_coefficient(m, n);
            const double shifted = family::collapse_coefficient(m + n, n);
            worst_period =
                std::max(worst_period, std::fabs(std::fabs(shifted) - std::fabs(lam)));
            worst_bound = std::max(worst_bound, std::fabs(lam) - 1.0);
        }
    }
    out.require(worst_period <= 1e-12, "periodicity residual " + fmt("%.3e", worst_period));
    out.require(worst_bound <= 1e-12, "bound excess " + fmt("%.3e", worst_bound));
    out.note("periodicity " + fmt("%.3e", worst_period) + ", bound excess " +
             fmt("%.3e", worst_bound));
    return out;
}

// --- 4. exhaustive normal form, alpha bound, norm bound -------------------

void normal_form_walk(int n, double phi, const Mat& p, const Mat& r, double p_norm,
                      const Mat& acc, family::PrWord& word, int max_len, double& worst_form,
                      double& worst_alpha, double& worst_norm) {
    for (family::PrFactor f : {family::PrFactor::Projector, family::PrFactor::Rotation}) {
        const Mat prod = (f == family::PrFactor::Projector ? p : r) * acc;
        word.push_back(f);
        const family::PrNormalForm nf = family::reduce_pr_word(word, n);
        worst_form =
            std::max(worst_form, max_abs_diff(prod, family::realize_normal_form(nf, phi)));
        worst_alpha = std::max(worst_alpha, std::fabs(nf.alpha) - 1.0);
        worst_norm = std::max(worst_norm, operator_norm(prod) - p_norm);
        if (static_cast<int>(word.size()) < max_len) {
            normal_form_walk(n, phi, p, r, p_norm, prod, word, max_len, worst_form,
                             worst_alpha, worst_norm);
        }
        word.pop_back();
    }
}

Outcome criterion_normal_form_exhaustive() {
    Outcome out;
    double worst_form = 0.0, worst_alpha = -1.0, worst_norm = -1.0;
    for (int n = 2; n <= 4; ++n) {
        const double phi = kPi / (2.0 * n);
        const Mat p = family::projector(phi);
        const Mat r = family::rotation(phi);
        family::PrWord word;
        normal_form_walk(n, phi, p, r, operator_norm(p), Mat::identity(2), word, 14,
                         worst_form, worst_alpha, worst_norm);
    }
    out.require(worst_form <= 1e-10, "normal-form residual " + fmt("%.3e", worst_form));
    out.require(worst_alpha <= 1e-12, "alpha excess " + fmt("%.3e", worst_alpha));
    out.require(worst_norm <= 1e-10, "norm-bound excess " + fmt("%.3e", worst_norm));
    out.note("form " + fmt("%.3e", worst_form) + ", alpha " + fmt("%.3e", worst_alpha) +
             ", norm " + fmt("%.3e", worst_norm));
    return out;
}

// --- 5. decay along random words at the stable parameters -----------------

Outcome criterion_decay() {
    Outcome out;
    const family::SuiteOptions defaults;
    rng::Engine eng(defaults.seed);
    double worst_envelope = -1e300;
    double worst_final = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const family::FamilyPoint fp = family::make_family_point(family::stable_parameter(n));
        const MatrixClass cls({fp.g, fp.h});
        const double p_norm = operator_norm(family::projector(kPi / (2.0 * n)));
        for (int wi = 0; wi < 200; ++wi) {
            Mat acc = Mat::identity(2);
            double envelope = 1.0;
            for (int step = 0; step < 500; ++step) {
                acc = cls[static_cast<int>(eng() & 1ull)] * acc;
                envelope *= fp.mu;
                worst_envelope =
                    std::max(worst_envelope, operator_norm(acc) - envelope * p_norm);
            }
            worst_final = std::max(worst_final, operator_norm(acc));
        }
    }
    out.require(worst_envelope <= 1e-8, "envelope excess " + fmt("%.3e", worst_envelope));
    out.require(worst_final < 1e-30, "largest final norm " + fmt("%.3e", worst_final));
    out.note("envelope excess " + fmt("%.3e", worst_envelope) + ", largest final norm " +
             fmt("%.3e", worst_final));
    return out;
}

// --- 6. growth factor: threshold, per-period growth, asymptotics ----------

Outcome criterion_growth() {
    Outcome out;
    const int threshold = family::growth_threshold();
    out.require(threshold == 6, "computed threshold " + std::to_string(threshold));
    for (int n = 1; n <= 5; ++n) {
        out.require(family::growth_factor(n) < 1.0,
                    "growth factor above 1 at n = " + std::to_string(n));
    }
    for (int n = 6; n <= 200; ++n) {
        out.require(family::growth_factor(n) > 1.0,
                    "growth factor below 1 at n = " + std::to_string(n));
    }

    double worst_ratio = 0.0;
    for (int n = 6; n <= 12; ++n) {
        const MatrixClass cls = family::family_class(family::unstable_parameter(n));
        const double gf = family::growth_factor(n);
        double prev = family::product_log_norm(cls, family::periodic_witness_word(n, 1));
        for (int i = 2; i <= 10; ++i) {
            const double cur =
                family::product_log_norm(cls, family::periodic_witness_word(n, i));
            worst_ratio = std::max(worst_ratio, std::fabs(std::exp(cur - prev) - gf) / gf);
            prev = cur;
        }
    }
    out.require(worst_ratio <= 1e-6, "per-period ratio error " + fmt("%.3e", worst_ratio));

    double worst_asym = -1e300;
    for (int n = 20; n <= 200; ++n) {
        const double theta = kPi / (2.0 * n + 1.0);
        const double lhs = std::fabs(family::growth_factor(n) - 1.0 -
                                     kPi * kPi / (2.0 * (2.0 * n + 1) * (2.0 * n + 1)));
        const double band = 8.0 * (n + 2) * theta * theta * theta * theta;
        worst_asym = std::max(worst_asym, lhs - band);
    }
    out.require(worst_asym <= 0.0, "asymptotic band exceeded by " + fmt("%.3e", worst_asym));
    out.note("threshold 6, ratio error " + fmt("%.3e", worst_ratio));
    return out;
}

// --- 7. figure1 CLI classification -----------------------------------------

Outcome criterion_figure1() {
    Outcome out;
    const std::string cmd =
        std::string(SWITCHSTAB_CLI_PATH) + " figure1 --n-max 12 --depth 10 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        out.require(false, "could not spawn the CLI");
        return out;
    }
    std::string text;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) text.append(buf, got);
    const int status = pclose(pipe);
    out.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI exited nonzero");

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    out.require(line == "n,kind,t_value,verdict,best_lower,best_upper",
                "unexpected CSV header: " + line);
    int rows = 0;
    double prev_t = 2.0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream cells(line);
        std::string n_str, kind, t_str, verdict;
        std::getline(cells, n_str, ',');
        std::getline(cells, kind, ',');
        std::getline(cells, t_str, ',');
        std::getline(cells, verdict, ',');
        const int n = std::stoi(n_str);
        const double t = std::stod(t_str);
        out.require(t < prev_t, "t values not strictly decreasing at row " + line);
        prev_t = t;
        if (kind == "t_n") {
            out.require(verdict != "ProvenUnstable",
                        "stable parameter misclassified: " + line);
        } else if (n >= 6) {
            out.require(verdict == "ProvenUnstable",
                        "unstable parameter not proven at: " + line);
        }
    }
    out.require(rows == 23, "expected 23 rows, got " + std::to_string(rows));
    out.note("23 rows, interleaved verdicts as constructed");
    return out;
}

// --- 8. norm construction: axioms and truncated contraction ---------------

void check_norm_approx(const NormApprox& na, Outcome& out, const std::string& label) {
    const std::vector<Vec> samples = contraction_samples(2, 1000, 0x5eed5eedULL);
    rng::Engine eng(0xacce97ed);
    const double c = na.bound_constant();
    double worst_axiom = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Vec& x = samples[i];
        const double vx = na.evaluate(x);
        worst_axiom = std::max(worst_axiom, x.norm() - vx);
        worst_axiom = std::max(worst_axiom, vx - c * x.norm());
        const double lambda = rng::uniform(eng, -3.0, 3.0);
        worst_axiom = std::max(
            worst_axiom, std::fabs(na.evaluate(x.scaled(lambda)) - std::fabs(lambda) * vx));
        const Vec& y = samples[(i + 137) % samples.size()];
        worst_axiom =
            std::max(worst_axiom, na.evaluate(x + y) - vx - na.evaluate(y));
    }
    out.require(worst_axiom <= 1e-10,
                label + ": axiom violation " + fmt("%.3e", worst_axiom));
    for (int k = 1; k <= na.matrix_class().size(); ++k) {
        const ContractionReport rep = verify_contraction(na, k, samples);
        out.require(rep.max_truncated_violation <= 1e-10,
                    label + ": contraction violation " +
                        fmt("%.3e", rep.max_truncated_violation));
    }
}

Outcome criterion_norm_construction() {
    Outcome out;
    check_norm_approx(NormApprox::build(MatrixClass({Mat::identity(2).scaled(0.5)}), 0.5, 6),
                      out, "scalar class");
    const double t3 = family::stable_parameter(3);
    const double mu3 = 1.0 - std::pow(t3, 4.0);
    check_norm_approx(NormApprox::build(family::family_class(t3), mu3, 6), out,
                      "stable family point");

    rng::Engine eng(0xc1a55e5);
    for (int i = 0; i < 3; ++i) {
        Mat a(2), b(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a.at(r, c) = rng::uniform(eng, -1.0, 1.0);
                b.at(r, c) = rng::uniform(eng, -1.0, 1.0);
            }
        MatrixClass cls({a, b});
        BoundsOptions shallow;
        shallow.depth = 3;
        cls = cls.scaled(0.8 / stability_bounds(cls, shallow).best_upper);
        BoundsOptions certify;
        certify.depth = 8;
        const BoundsReport rep = stability_bounds(cls, certify);
        out.require(rep.best_upper < 1.0, "random class not certified contractive");
        check_norm_approx(NormApprox::build_auto_q(cls, 6), out,
                          "random class " + std::to_string(i));
    }
    out.note("five classes, 1006 samples each");
    return out;
}

// --- 9. two-matrix criterion consistency ----------------------------------

Outcome criterion_r2_consistency() {
    Outcome out;
    const R2Verdict va = r2_criterion({1.0, 0.0, 0.0, 1.0});
    out.require(va.stable && va.matched == R2Case::A, "identity pair not case a");
    const R2Verdict vd = r2_criterion({-1.0, 0.0, 3.9, -1.0});
    out.require(vd.stable && vd.matched == R2Case::D, "case d example mismatch");
    const R2Verdict vx = r2_criterion({-1.0, 4.0, 4.0, -1.0});
    out.require(!vx.stable, "boundary of case d must be excluded");
    const R2Verdict ve = r2_criterion({0.0, 0.5, 0.5, 0.0});
    out.require(ve.stable && ve.matched == R2Case::E, "case e example mismatch");

    rng::Engine eng(0x7e13a);
    int contradictions = 0;
    int stable_count = 0;
    for (int i = 0; i < 10'000; ++i) {
        const MixParams2 p{rng::uniform(eng, -2.0, 2.0), rng::uniform(eng, -2.0, 2.0),
                           rng::uniform(eng, -2.0, 2.0), rng::uniform(eng, -2.0, 2.0)};
        const CrossValidation cv = cross_validate(p, 10);
        if (cv.hard_contradiction) ++contradictions;
        if (cv.criterion_stable) ++stable_count;
    }
    out.require(contradictions == 0,
                std::to_string(contradictions) + " hard contradictions");
    out.note("10000 points, 0 contradictions, " + std::to_string(stable_count) +
             " criterion-stable");
    return out;
}

// --- 10. positive mixing classes ------------------------------------------

Outcome criterion_rplus() {
    Outcome out;
    MixClassSpec half{2, {{0.5, 0.5}, {0.5, 0.5}}};
    const RPlusVerdict vh = rplus_criterion(half);
    out.require(vh.stable, "all-0.5 class must be stable");
    out.require(std::fabs(vh.perron_root - 1.0) <= 1e-10,
                "root error " + fmt("%.3e", std::fabs(vh.perron_root - 1.0)));

    MixClassSpec big{2, {{0.6, 0.6}, {0.6, 0.6}}};
    const RPlusVerdict vb = rplus_criterion(big);
    out.require(!vb.stable, "all-0.6 class must be unstable");
    out.require(std::fabs(vb.perron_root - 1.2) <= 1e-10,
                "root error " + fmt("%.3e", std::fabs(vb.perron_root - 1.2)));

    MixClassSpec third{3,
                       {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}};
    const RPlusVerdict vt = rplus_criterion(third);
    out.require(vt.stable, "all-1/3 class must be stable");
    out.require(std::fabs(vt.perron_root - 1.0) <= 1e-10,
                "root error " + fmt("%.3e", std::fabs(vt.perron_root - 1.0)));

    bool rejected = false;
    try {
        rplus_criterion(MixClassSpec{2, {{0.5, 0.0}, {0.5, 0.5}}});
    } catch (const InvalidInput&) {
        rejected = true;
    }
    out.require(rejected, "non-positive entries must be rejected");
    out.note("three landmark roots at 1e-10, precondition enforced");
    return out;
}

// --- 11. regularity: greedy equals brute force -----------------------------

int brute_force_regularity(int m, const std::vector<int>& w, std::size_t from,
                           std::vector<int>& memo) {
    if (memo[from] >= 0) return memo[from];
    int best = 0;
    std::uint64_t seen = 0;
    const std::uint64_t full = (1ull << static_cast<unsigned>(m)) - 1ull;
    for (std::size_t i = from; i < w.size(); ++i) {
        seen |= 1ull << static_cast<unsigned>(w[i] - 1);
        if (seen == full) {
            best = std::max(best, 1 + brute_force_regularity(m, w, i + 1, memo));
        }
    }
    memo[from] = best;
    return best;
}

Outcome criterion_regularity() {
    Outcome out;
    std::uint64_t checked = 0;
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> word;
        std::function<void()> walk = [&]() {
            Word w;
            w.indices = word;
            std::vector<int> memo(word.size() + 1, -1);
            const int brute = brute_force_regularity(m, word, 0, memo);
            if (regularity_index(m, w) != brute) {
                out.require(false, "greedy mismatch on a word of length " +
                                       std::to_string(word.size()));
                return;
            }
            ++checked;
            if (static_cast<int>(word.size()) < 12 && out.pass) {
                for (int sym = 1; sym <= m; ++sym) {
                    word.push_back(sym);
                    walk();
                    word.pop_back();
                }
            }
        };
        walk();
    }
    out.note(std::to_string(checked) + " words checked exhaustively");
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "master identity grid", criterion_master_identity},
        {2, "odd-angle collapse", criterion_odd_collapse},
        {3, "collapse coefficient bounds", criterion_collapse_coefficients},
        {4, "exhaustive normal form", criterion_normal_form_exhaustive},
        {5, "stable-point decay", criterion_decay},
        {6, "growth factor threshold and asymptotics", criterion_growth},
        {7, "figure1 classification", criterion_figure1},
        {8, "norm construction", criterion_norm_construction},
        {9, "two-matrix criterion consistency", criterion_r2_consistency},
        {10, "positive-class criterion", criterion_rplus},
        {11, "regularity greedy vs brute force", criterion_regularity},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %02d: %s (%.2fs) %s\n", out.pass ? "PASS" : "FAIL",
                    c.id, c.name, secs, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
        if ((c.id == 4 || c.id == 7) && secs >= 60.0) {
            std::printf("[FAIL] criterion %02d exceeded its runtime budget (%.2fs)\n", c.id,
                        secs);
            ++failures;
        }
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
