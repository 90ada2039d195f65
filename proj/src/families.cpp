#include "switchstab/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "switchstab/linalg.hpp"
#include "switchstab/rng.hpp"

namespace switchstab {
namespace family {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

} // namespace

Mat projector(double phi) {
    if (!(std::fabs(phi) < kPi / 2.0)) {
        throw InvalidInput("projector: |phi| must be below pi/2");
    }
    return Mat::from_rows({{1.0, -std::tan(phi)}, {0.0, 0.0}});
}

Mat rotation(double phi) {
    const double c = std::cos(2.0 * phi);
    const double s = std::sin(2.0 * phi);
    return Mat::from_rows({{c, -s}, {s, c}});
}

FamilyPoint make_family_point(double t) {
    if (!(std::fabs(t) <= 1.0 - 1e-9)) {
        throw InvalidInput("make_family_point: |t| must be at most 1 - 1e-9");
    }
    FamilyPoint p;
    p.t = t;
    p.phi = std::asin(t);
    p.mu = 1.0 - t * t * t * t;
    const double root = std::sqrt(1.0 - t * t);
    p.g = Mat::from_rows({{p.mu, -p.mu * t / root}, {0.0, 0.0}});
    p.h = Mat::from_rows({{p.mu * (1.0 - 2.0 * t * t), -p.mu * 2.0 * t * root},
                          {p.mu * 2.0 * t * root, p.mu * (1.0 - 2.0 * t * t)}});
    return p;
}

MatrixClass family_class(double t) {
    FamilyPoint p = make_family_point(t);
    return MatrixClass({p.g, p.h});
}

double stable_parameter(int n) {
    if (n < 1) throw InvalidInput("stable_parameter: n must be >= 1");
    return std::sin(kPi / (2.0 * n));
}

double unstable_parameter(int n) {
    if (n < 1) throw InvalidInput("unstable_parameter: n must be >= 1");
    return std::sin(kPi / (2.0 * n + 1.0));
}

double sandwich_coefficient(int m, double phi) {
    if (m < 0) throw InvalidInput("sandwich_coefficient: m must be >= 0");
    return std::cos((2.0 * m + 1.0) * phi) / std::cos(phi);
}

double check_master_identity(int m, double phi) {
    const Mat p = projector(phi);
    const Mat r = rotation(phi);
    Mat acc = p;
    for (int i = 0; i < m; ++i) acc = r * acc;
    acc = p * acc;
    return max_abs_diff(acc, p.scaled(sandwich_coefficient(m, phi)));
}

double collapse_coefficient(int m, int n) {
    if (n < 1) throw InvalidInput("collapse_coefficient: n must be >= 1");
    return sandwich_coefficient(m, kPi / (2.0 * n));
}

namespace {

PrNormalForm reduce_step(const PrNormalForm& st, PrFactor next_left, int n) {
    PrNormalForm out = st;
    if (next_left == PrFactor::Rotation) {
        out.left_rot += 1;
        return out;
    }
    if (st.projector == 0) {
        // alpha R^(q+s) gains a leading projector.
        out.left_rot = 0;
        out.projector = 1;
        out.right_rot = st.left_rot + st.right_rot;
        return out;
    }
    // P R^q P collapses to a scalar multiple of P.
    out.alpha = st.alpha * collapse_coefficient(st.left_rot, n);
    out.left_rot = 0;
    out.projector = 1;
    out.right_rot = st.right_rot;
    return out;
}

} // namespace

PrNormalForm reduce_pr_word(const PrWord& word, int n) {
    if (n < 1) throw InvalidInput("reduce_pr_word: phi must be pi/(2n) with n >= 1");
    PrNormalForm st;
    for (PrFactor f : word) st = reduce_step(st, f, n);
    return st;
}

Mat realize_normal_form(const PrNormalForm& nf, double phi) {
    // R^k(phi) is the rotation by 2*k*phi, so powers come in closed form.
    Mat acc = rotation(nf.right_rot * phi);
    if (nf.projector != 0) acc = projector(phi) * acc;
    acc = rotation(nf.left_rot * phi) * acc;
    return acc.scaled(nf.alpha);
}

Mat realize_pr_word(const PrWord& word, double phi) {
    const Mat p = projector(phi);
    const Mat r = rotation(phi);
    Mat acc = Mat::identity(2);
    for (PrFactor f : word) acc = (f == PrFactor::Projector ? p : r) * acc;
    return acc;
}

double growth_factor(int n) {
    if (n < 1) throw InvalidInput("growth_factor: n must be >= 1");
    const double theta = kPi / (2.0 * n + 1.0);
    const double s = std::sin(theta);
    const double nu = 1.0 - s * s * s * s;
    return std::pow(nu, n + 2) / std::cos(theta);
}

int growth_threshold() {
    for (int n = 1; n <= 10'000; ++n) {
        if (growth_factor(n) > 1.0) return n;
    }
    throw Error("growth_threshold: no super-unit growth factor found below 10000");
}

Word periodic_witness_word(int n, int i) {
    if (n < 2) throw InvalidInput("periodic_witness_word: n must be >= 2");
    if (i < 1) throw InvalidInput("periodic_witness_word: i must be >= 1");
    Word w;
    w.indices.reserve(static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 2));
    for (int period = 0; period < i; ++period) {
        w.indices.push_back(1);
        for (int j = 0; j < n; ++j) w.indices.push_back(2);
        w.indices.push_back(1);
    }
    return w;
}

double product_log_norm(const MatrixClass& cls, const Word& w) {
    validate_word(w, cls.size());
    Mat acc = Mat::identity(cls.dim());
    double log_scale = 0.0;
    for (int idx : w.indices) {
        acc = cls[idx - 1] * acc;
        const double s = acc.max_abs();
        if (s == 0.0) return -std::numeric_limits<double>::infinity();
        if (s > 1e100 || s < 1e-100) {
            log_scale += std::log(s);
            acc = acc.scaled(1.0 / s);
        }
    }
    const double norm = operator_norm(acc);
    if (norm == 0.0) return -std::numeric_limits<double>::infinity();
    return log_scale + std::log(norm);
}

namespace {

// Perturbable constructors for the check suite. The offset lands on entry
// (0,0) of every constructed matrix, which breaks each identity by about
// the offset itself.
struct Builders {
    double eps;

    Mat p(double phi) const {
        Mat m = projector(phi);
        m.at(0, 0) += eps;
        return m;
    }
    Mat r(double phi) const {
        Mat m = rotation(phi);
        m.at(0, 0) += eps;
        return m;
    }
    FamilyPoint point(double t) const {
        FamilyPoint fp = make_family_point(t);
        fp.g.at(0, 0) += eps;
        fp.h.at(0, 0) += eps;
        return fp;
    }
};

CheckResult check_master_identity_grid(const Builders& mk) {
    CheckResult res{"master_identity", 0.0, 1e-10, false,
                    "P R^m P vs closed form, m = 0..50, 200 angles in (0, 1.4)"};
    for (int gi = 1; gi <= 200; ++gi) {
        const double phi = 1.4 * gi / 201.0;
        const Mat p = mk.p(phi);
        const Mat r = mk.r(phi);
        Mat acc = p;
        for (int m = 0; m <= 50; ++m) {
            const Mat prod = p * acc; // realizes P R^m P
            const Mat closed = mk.p(phi).scaled(sandwich_coefficient(m, phi));
            res.worst = std::max(res.worst, max_abs_diff(prod, closed));
            acc = r * acc;
        }
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

CheckResult check_odd_angle_collapse(const Builders& mk, int n_max) {
    CheckResult res{"odd_angle_collapse", 0.0, 1e-10, false,
                    "P R^n P = -sec(phi) P at phi = pi/(2n+1), n = 1..n_max"};
    for (int n = 1; n <= n_max; ++n) {
        const double phi = kPi / (2.0 * n + 1.0);
        const Mat p = mk.p(phi);
        const Mat r = mk.r(phi);
        Mat acc = p;
        for (int i = 0; i < n; ++i) acc = r * acc;
        acc = p * acc;
        const Mat closed = mk.p(phi).scaled(-1.0 / std::cos(phi));
        res.worst = std::max(res.worst, max_abs_diff(acc, closed));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

CheckResult check_collapse_coefficient_bounds() {
    CheckResult res{"collapse_coefficient_bounds", 0.0, 1e-12, false,
                    "|lambda(m+n,n)| = |lambda(m,n)|, |lambda| <= 1, lambda(0,n) = 1"};
    for (int n = 2; n <= 10; ++n) {
        for (int m = 0; m <= 30; ++m) {
            const double lam = collapse_coefficient(m, n);
            const double lam_shift = collapse_coefficient(m + n, n);
            res.worst = std::max(res.worst, std::fabs(std::fabs(lam_shift) - std::fabs(lam)));
            res.worst = std::max(res.worst, std::fabs(lam) - 1.0);
        }
        res.worst = std::max(res.worst, std::fabs(collapse_coefficient(0, n) - 1.0));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

void normal_form_dfs(int n, double phi, const Mat& p, const Mat& r, const Mat& acc,
                     const PrNormalForm& st, int len, int max_len, double p_norm,
                     CheckResult& form_res, CheckResult& alpha_res,
                     CheckResult& norm_res) {
    for (PrFactor f : {PrFactor::Projector, PrFactor::Rotation}) {
        const Mat prod = (f == PrFactor::Projector ? p : r) * acc;
        const PrNormalForm next = reduce_step(st, f, n);
        form_res.worst =
            std::max(form_res.worst, max_abs_diff(prod, realize_normal_form(next, phi)));
        alpha_res.worst = std::max(alpha_res.worst, std::fabs(next.alpha) - 1.0);
        norm_res.worst = std::max(norm_res.worst, operator_norm(prod) - p_norm);
        if (len + 1 < max_len) {
            normal_form_dfs(n, phi, p, r, prod, next, len + 1, max_len, p_norm, form_res,
                            alpha_res, norm_res);
        }
    }
}

std::vector<CheckResult> check_normal_form_exhaustive(const Builders& mk, int word_len) {
    CheckResult form_res{"normal_form_matches_product", 0.0, 1e-10, false,
                         "alpha R^q P^r R^s vs direct product, all words, n in {2,3,4}"};
    CheckResult alpha_res{"normal_form_alpha_bounded", 0.0, 1e-12, false,
                          "|alpha| <= 1 across every reduced word"};
    CheckResult norm_res{"product_norm_bound", 0.0, 1e-10, false,
                         "|B_k...B_1| <= |P(pi/(2n))| for every word over {P, R}"};
    for (int n = 2; n <= 4; ++n) {
        const double phi = kPi / (2.0 * n);
        const Mat p = mk.p(phi);
        const Mat r = mk.r(phi);
        const double p_norm = operator_norm(p);
        normal_form_dfs(n, phi, p, r, Mat::identity(2), PrNormalForm{}, 0, word_len,
                        p_norm, form_res, alpha_res, norm_res);
    }
    form_res.pass = form_res.worst <= form_res.tolerance;
    alpha_res.pass = alpha_res.worst <= alpha_res.tolerance;
    norm_res.pass = norm_res.worst <= norm_res.tolerance;
    return {form_res, alpha_res, norm_res};
}

CheckResult check_family_angle_identity(const Builders& mk) {
    CheckResult res{"family_angle_identity", 0.0, 1e-12, false,
                    "G(sin phi) = (1-sin^4 phi) P(phi), same for H and R, 1000 angles"};
    for (int gi = 1; gi <= 1000; ++gi) {
        const double phi = 0.99 * (kPi / 2.0) * gi / 1001.0;
        const double t = std::sin(phi);
        const double mu = 1.0 - t * t * t * t;
        const FamilyPoint fp = mk.point(t);
        res.worst = std::max(res.worst, max_abs_diff(fp.g, mk.p(phi).scaled(mu)));
        res.worst = std::max(res.worst, max_abs_diff(fp.h, mk.r(phi).scaled(mu)));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

CheckResult check_parameter_interleaving() {
    CheckResult res{"parameter_interleaving", -1.0, 0.0, false,
                    "t_(n+1) < s_n < t_n strictly, n = 2..100"};
    res.worst = -std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 100; ++n) {
        res.worst = std::max(res.worst, unstable_parameter(n) - stable_parameter(n));
        res.worst = std::max(res.worst, stable_parameter(n + 1) - unstable_parameter(n));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

std::vector<CheckResult> check_decay(const Builders& mk, const SuiteOptions& opt) {
    CheckResult env{"decay_envelope", 0.0, 1e-8, false,
                    "|A_w| <= mu^k |P| along random words over the stable points"};
    CheckResult fin{"decay_final_norms", 0.0, 1e-30, false,
                    "norms collapse by the end of each random word"};
    rng::Engine eng(opt.seed);
    for (int n = 2; n <= 6; ++n) {
        const FamilyPoint fp = mk.point(stable_parameter(n));
        const MatrixClass cls({fp.g, fp.h});
        const double p_norm = operator_norm(projector(kPi / (2.0 * n)));
        for (int wi = 0; wi < opt.decay_words; ++wi) {
            Mat acc = Mat::identity(2);
            double envelope = 1.0;
            for (int step = 0; step < opt.decay_len; ++step) {
                acc = cls[static_cast<int>(eng() & 1ull)] * acc;
                envelope *= fp.mu;
                env.worst = std::max(env.worst, operator_norm(acc) - envelope * p_norm);
            }
            fin.worst = std::max(fin.worst, operator_norm(acc));
        }
    }
    env.pass = env.worst <= env.tolerance;
    fin.pass = fin.worst < fin.tolerance;
    return {env, fin};
}

CheckResult check_growth_threshold() {
    CheckResult res{"growth_threshold_scan", 0.0, 0.0, false, ""};
    const int threshold = growth_threshold();
    res.detail = "growth factor crosses 1 at n = " + std::to_string(threshold) +
                 "; sign pattern checked through n = 200";
    res.worst = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 200; ++n) {
        const double margin = growth_factor(n) - 1.0;
        // Wrong-side margins are positive violations.
        res.worst = std::max(res.worst, n < threshold ? margin : -margin);
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

std::vector<CheckResult> check_witness_growth(const Builders& mk) {
    CheckResult ratio{"periodic_witness_growth", 0.0, 1e-6, false,
                      "per-period norm ratio equals the growth factor, n = 6..12"};
    CheckResult form{"witness_product_form", 0.0, 1e-8, false,
                     "witness word realizes (-nu^(n+2)/cos)^i P, relative"};
    for (int n = 6; n <= 12; ++n) {
        const FamilyPoint fp = mk.point(unstable_parameter(n));
        const MatrixClass cls({fp.g, fp.h});
        const double gf = growth_factor(n);
        double prev = 0.0;
        for (int i = 1; i <= 25; ++i) {
            const double log_norm = product_log_norm(cls, periodic_witness_word(n, i));
            if (i > 1) {
                const double per_period = std::exp(log_norm - prev);
                ratio.worst = std::max(ratio.worst, std::fabs(per_period - gf) / gf);
            }
            prev = log_norm;
        }
    }
    for (int n = 2; n <= 12; ++n) {
        const double theta = kPi / (2.0 * n + 1.0);
        const FamilyPoint fp = mk.point(unstable_parameter(n));
        const MatrixClass cls({fp.g, fp.h});
        const double base = -std::pow(fp.mu, n + 2) / std::cos(theta);
        for (int i : {1, 5, 10}) {
            const Mat realized = realize_word(cls, periodic_witness_word(n, i));
            const Mat closed = projector(theta).scaled(std::pow(base, i));
            form.worst = std::max(form.worst,
                                  max_abs_diff(realized, closed) / closed.max_abs());
        }
    }
    ratio.pass = ratio.worst <= ratio.tolerance;
    form.pass = form.worst <= form.tolerance;
    return {ratio, form};
}

CheckResult check_growth_asymptotics() {
    CheckResult res{"growth_asymptotics", 0.0, 0.0, false,
                    "growth factor minus 1 tracks pi^2/(2(2n+1)^2), n = 20..200"};
    res.worst = -std::numeric_limits<double>::infinity();
    for (int n = 20; n <= 200; ++n) {
        const double theta = kPi / (2.0 * n + 1.0);
        const double lhs =
            std::fabs(growth_factor(n) - 1.0 - kPi * kPi / (2.0 * (2.0 * n + 1.0) * (2.0 * n + 1.0)));
        const double band = 8.0 * (n + 2) * theta * theta * theta * theta;
        res.worst = std::max(res.worst, lhs - band);
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

} // namespace

std::vector<CheckResult> run_family_checks(const SuiteOptions& opt) {
    const Builders mk{opt.perturb};
    std::vector<CheckResult> out;
    out.push_back(check_master_identity_grid(mk));
    out.push_back(check_odd_angle_collapse(mk, opt.n_max));
    out.push_back(check_collapse_coefficient_bounds());
    for (CheckResult& r : check_normal_form_exhaustive(mk, opt.word_len)) {
        out.push_back(std::move(r));
    }
    out.push_back(check_family_angle_identity(mk));
    out.push_back(check_parameter_interleaving());
    for (CheckResult& r : check_decay(mk, opt)) out.push_back(std::move(r));
    out.push_back(check_growth_threshold());
    for (CheckResult& r : check_witness_growth(mk)) out.push_back(std::move(r));
    out.push_back(check_growth_asymptotics());
    return out;
}

} // namespace family
} // namespace switchstab
