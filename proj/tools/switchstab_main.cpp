// Command-line front end: stability bounds, family identity verification,
// the interleaved-parameter classification scan, exact criteria for mixing
// classes, norm construction, and regularity indices. Reports are JSON on
// stdout (CSV for figure1); exit codes: 0 ok, 1 check failure, 2 invalid
// input, 3 budget exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "switchstab/io.hpp"
#include "switchstab/kernels.hpp"
#include "switchstab/linalg.hpp"
#include "switchstab/version.hpp"

namespace ss = switchstab;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string out_path;
    bool deterministic = false;
};

void add_common(CLI::App* cmd, CommonArgs& c) {
    cmd->add_option("--out", c.out_path, "Write the report to this path instead of stdout");
    cmd->add_flag("--deterministic", c.deterministic,
                  "Omit wall time so identical inputs give byte-identical output");
}

void emit(const std::string& text, const CommonArgs& c) {
    if (c.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) throw ss::InvalidInput("cannot write to " + c.out_path);
    out << text;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json envelope(const std::string& command, json input, json params, json results,
              const CommonArgs& c, const Timer& timer) {
    json rep{{"tool",
              {{"name", ss::kToolName},
               {"version", ss::kToolVersion},
               {"kernel", ss::active_kernels().name}}},
             {"command", command},
             {"input", std::move(input)},
             {"params", std::move(params)},
             {"results", std::move(results)}};
    if (!c.deterministic) rep["wall_time_s"] = timer.seconds();
    return rep;
}

struct ClassInput {
    std::string class_path;
    std::string family_spec;

    ss::MatrixClass resolve(json& input_echo) const {
        if (class_path.empty() == family_spec.empty()) {
            throw ss::InvalidInput("provide exactly one of --class and --t");
        }
        if (!class_path.empty()) {
            ss::MatrixClass cls = ss::io::load_class(class_path);
            input_echo = json{{"source", "file:" + class_path},
                              {"class", ss::io::class_to_json(cls)}};
            return cls;
        }
        const ss::io::FamilySpec fs = ss::io::parse_family_spec(family_spec);
        ss::MatrixClass cls = ss::family::family_class(fs.t);
        input_echo = json{{"source", "family:" + fs.label},
                          {"t", fs.t},
                          {"class", ss::io::class_to_json(cls)}};
        return cls;
    }
};

void add_class_input(CLI::App* cmd, ClassInput& in) {
    auto* file_opt =
        cmd->add_option("--class", in.class_path, "Class file {\"m\",\"n\",\"matrices\"}");
    cmd->add_option("--t", in.family_spec,
                    "Built-in two-matrix family: t:n, s:n, or a parameter value")
        ->excludes(file_opt);
}

int run_bounds(const ClassInput& in, const ss::BoundsOptions& opt, const CommonArgs& c) {
    Timer timer;
    json input_echo;
    const ss::MatrixClass cls = in.resolve(input_echo);
    const ss::BoundsReport rep = ss::stability_bounds(cls, opt);
    const json report = envelope("bounds", input_echo,
                                 json{{"depth", opt.depth},
                                      {"tolerance", opt.tolerance},
                                      {"budget", opt.budget}},
                                 ss::io::bounds_to_json(rep), c, timer);
    emit(report.dump(2) + "\n", c);
    return 0;
}

int run_verify_appendix(const ss::family::SuiteOptions& opt, const CommonArgs& c) {
    Timer timer;
    const std::vector<ss::family::CheckResult> checks = ss::family::run_family_checks(opt);
    bool all_pass = true;
    for (const auto& chk : checks) all_pass = all_pass && chk.pass;
    const json report =
        envelope("verify-appendix", json::object(),
                 json{{"n_max", opt.n_max},
                      {"word_len", opt.word_len},
                      {"perturb", opt.perturb},
                      {"seed", opt.seed},
                      {"decay_words", opt.decay_words},
                      {"decay_len", opt.decay_len}},
                 json{{"checks", ss::io::check_results_to_json(checks)},
                      {"all_pass", all_pass}},
                 c, timer);
    emit(report.dump(2) + "\n", c);
    return all_pass ? 0 : 1;
}

int run_figure1(int n_max, int depth, const CommonArgs& c) {
    const std::vector<ss::FigureRow> rows = ss::figure_rows(n_max, depth);
    emit(ss::figure_csv(rows), c);
    return 0;
}

int run_criterion(const std::vector<double>& r2, const std::string& rplus_path, double tau,
                  int cross_depth, const CommonArgs& c) {
    Timer timer;
    if (r2.empty() == rplus_path.empty()) {
        throw ss::InvalidInput("provide exactly one of --r2 and --rplus");
    }
    json input_echo;
    json results;
    bool contradiction = false;
    if (!r2.empty()) {
        const ss::MixParams2 p{r2[0], r2[1], r2[2], r2[3]};
        input_echo = json{{"r2", {p.a11, p.a12, p.a21, p.a22}}};
        const ss::R2Verdict verdict = ss::r2_criterion(p, tau);
        results = json{{"verdict", verdict.stable ? "Stable" : "NotStable"},
                       {"case", ss::to_string(verdict.matched)}};
        if (cross_depth > 0) {
            const ss::CrossValidation cv = ss::cross_validate(p, cross_depth, tau);
            results["cross_validation"] = ss::io::cross_validation_to_json(cv);
            contradiction = cv.hard_contradiction;
        }
    } else {
        const ss::MixClassSpec spec = ss::io::load_mix_spec(rplus_path);
        input_echo = json{{"rplus", {{"n", spec.n}, {"rows", spec.rows}}}};
        const ss::RPlusVerdict verdict = ss::rplus_criterion(spec, tau);
        results = json{{"verdict", verdict.stable ? "Stable" : "NotStable"},
                       {"perron_root", verdict.perron_root}};
        if (cross_depth > 0) {
            const ss::CrossValidation cv = ss::cross_validate(spec, cross_depth, tau);
            results["cross_validation"] = ss::io::cross_validation_to_json(cv);
            contradiction = cv.hard_contradiction;
        }
    }
    const json report =
        envelope("criterion", input_echo,
                 json{{"tau", tau}, {"cross_depth", cross_depth}}, results, c, timer);
    emit(report.dump(2) + "\n", c);
    return contradiction ? 1 : 0;
}

int run_norm(const ClassInput& in, const std::string& q_text, int depth,
             const std::string& eval_path, bool verify, int samples, std::uint64_t seed,
             const CommonArgs& c) {
    Timer timer;
    json input_echo;
    const ss::MatrixClass cls = in.resolve(input_echo);
    std::optional<ss::NormApprox> na;
    if (q_text == "auto") {
        na.emplace(ss::NormApprox::build_auto_q(cls, depth));
    } else {
        double q = 0.0;
        try {
            std::size_t used = 0;
            q = std::stod(q_text, &used);
            if (used != q_text.size()) throw ss::InvalidInput("");
        } catch (const std::exception&) {
            throw ss::InvalidInput("--q must be a number or \"auto\"");
        }
        na.emplace(ss::NormApprox::build(cls, q, depth));
    }

    json results{{"q", na->q()},
                 {"depth", na->depth()},
                 {"level_sizes", na->level_sizes()},
                 {"bound_constant", na->bound_constant()}};

    if (!eval_path.empty()) {
        json evals = json::array();
        for (const ss::Vec& x : ss::io::load_vectors(eval_path)) {
            evals.push_back(json{{"x", x.entries()}, {"value", na->evaluate(x)}});
        }
        results["evaluations"] = evals;
    }

    bool contraction_ok = true;
    if (verify) {
        const std::vector<ss::Vec> sample_set = ss::contraction_samples(cls.dim(), samples, seed);
        json members = json::array();
        double worst = 0.0;
        for (int k = 1; k <= cls.size(); ++k) {
            const ss::ContractionReport rep = ss::verify_contraction(*na, k, sample_set);
            members.push_back(ss::io::contraction_to_json(rep));
            worst = std::max(worst, rep.max_truncated_violation);
        }
        contraction_ok = worst <= 1e-10;
        results["contraction"] =
            json{{"members", members},
                 {"max_truncated_violation", worst},
                 {"pass", contraction_ok}};
    }

    const json report = envelope("norm", input_echo,
                                 json{{"q", q_text},
                                      {"depth", depth},
                                      {"samples", samples},
                                      {"seed", seed},
                                      {"verify", verify}},
                                 results, c, timer);
    emit(report.dump(2) + "\n", c);
    return contraction_ok ? 0 : 1;
}

int run_regularity(const std::string& word_path, int m, const CommonArgs& c) {
    Timer timer;
    const ss::Word w = ss::io::load_word(word_path);
    if (m == 0) {
        for (int idx : w.indices) m = std::max(m, idx);
        if (m == 0) throw ss::InvalidInput("regularity: empty word needs an explicit --m");
    }
    const std::vector<int> profile = ss::regularity_profile(m, w);
    const json report = envelope(
        "regularity", json{{"word", w.indices}, {"source", "file:" + word_path}},
        json{{"m", m}},
        json{{"r", profile.back()}, {"profile", profile}}, c, timer);
    emit(report.dump(2) + "\n", c);
    return 0;
}

json error_json(const char* category, const std::string& message) {
    return json{{"error", category}, {"message", message}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Absolute-stability analysis of switched linear systems"};
    app.set_version_flag("--version", std::string(ss::kToolName) + " " + ss::kToolVersion);
    app.require_subcommand(1);

    // bounds
    ClassInput bounds_in;
    ss::BoundsOptions bounds_opt;
    CommonArgs bounds_common;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "Spectral upper/lower stability bounds from all products up to a depth");
    add_class_input(bounds, bounds_in);
    bounds->add_option("--depth", bounds_opt.depth, "Maximum word length")
        ->capture_default_str();
    bounds->add_option("--tolerance", bounds_opt.tolerance, "Verdict tolerance around 1")
        ->capture_default_str();
    bounds->add_option("--budget", bounds_opt.budget, "Hard cap on realized products")
        ->capture_default_str();
    add_common(bounds, bounds_common);

    // verify-appendix
    ss::family::SuiteOptions suite_opt;
    CommonArgs verify_common;
    CLI::App* verify = app.add_subcommand(
        "verify-appendix", "Run the matrix-family identity and growth check suite");
    verify->add_option("--n-max", suite_opt.n_max, "Largest n for the per-n identities")
        ->capture_default_str();
    verify->add_option("--word-len", suite_opt.word_len,
                       "Exhaustive normal-form word length")
        ->capture_default_str();
    verify->add_option("--perturb", suite_opt.perturb,
                       "Test hook: offset added to every constructed family matrix")
        ->capture_default_str();
    verify->add_option("--seed", suite_opt.seed, "Seed for the random decay words")
        ->capture_default_str();
    verify->add_option("--decay-words", suite_opt.decay_words,
                       "Random words per stable parameter")
        ->capture_default_str();
    verify->add_option("--decay-len", suite_opt.decay_len, "Length of each random word")
        ->capture_default_str();
    add_common(verify, verify_common);

    // figure1
    int fig_n_max = 10;
    int fig_depth = 10;
    CommonArgs fig_common;
    CLI::App* figure1 = app.add_subcommand(
        "figure1",
        "CSV classification of the interleaved family parameters t_n and s_n");
    figure1->add_option("--n-max", fig_n_max, "Classify n = 2..n_max (plus t_(n_max+1))")
        ->capture_default_str();
    figure1->add_option("--depth", fig_depth, "Enumeration depth per class")
        ->capture_default_str();
    add_common(figure1, fig_common);

    // criterion
    std::vector<double> r2_params;
    std::string rplus_path;
    double tau = 0.0;
    int cross_depth = 0;
    CommonArgs crit_common;
    CLI::App* criterion = app.add_subcommand(
        "criterion", "Exact stability criteria for mixing classes");
    auto* r2_opt = criterion->add_option("--r2", r2_params,
                                         "a11 a12 a21 a22 of the two-matrix mixing class");
    r2_opt->expected(4);
    criterion->add_option("--rplus", rplus_path, "Positive mixing-class file {\"n\",\"rows\"}")
        ->excludes(r2_opt);
    criterion->add_option("--tau", tau, "Comparison widening tolerance")
        ->capture_default_str();
    criterion->add_option("--cross-depth", cross_depth,
                          "Also cross-validate against bounds up to this depth");
    add_common(criterion, crit_common);

    // norm
    ClassInput norm_in;
    std::string q_text = "auto";
    int norm_depth = 6;
    std::string eval_path;
    bool norm_verify = false;
    int norm_samples = 1000;
    std::uint64_t norm_seed = 0x5eed5eedULL;
    CommonArgs norm_common;
    CLI::App* norm = app.add_subcommand(
        "norm", "Build the product-sup norm; optionally evaluate it and verify contraction");
    add_class_input(norm, norm_in);
    norm->add_option("--q", q_text, "Decay rate in (0,1], or \"auto\"")
        ->capture_default_str();
    norm->add_option("--depth", norm_depth, "Truncation depth D")->capture_default_str();
    norm->add_option("--eval", eval_path, "Vector file to evaluate the norm on");
    norm->add_flag("--verify", norm_verify, "Check the truncated contraction on samples");
    norm->add_option("--samples", norm_samples, "Unit-sphere sample count for --verify")
        ->capture_default_str();
    norm->add_option("--seed", norm_seed, "Sample seed")->capture_default_str();
    add_common(norm, norm_common);

    // regularity
    std::string word_path;
    int reg_m = 0;
    CommonArgs reg_common;
    CLI::App* regularity = app.add_subcommand(
        "regularity", "Regularity index r(n) of a switching word");
    regularity->add_option("--word", word_path, "Word file (JSON array of 1-based indices)")
        ->required();
    regularity->add_option("--m", reg_m, "Alphabet size (default: largest index used)");
    add_common(regularity, reg_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << error_json("invalid_input", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(bounds_in, bounds_opt, bounds_common);
        if (verify->parsed()) return run_verify_appendix(suite_opt, verify_common);
        if (figure1->parsed()) return run_figure1(fig_n_max, fig_depth, fig_common);
        if (criterion->parsed()) {
            return run_criterion(r2_params, rplus_path, tau, cross_depth, crit_common);
        }
        if (norm->parsed()) {
            return run_norm(norm_in, q_text, norm_depth, eval_path, norm_verify,
                            norm_samples, norm_seed, norm_common);
        }
        if (regularity->parsed()) return run_regularity(word_path, reg_m, reg_common);
    } catch (const ss::BudgetExceeded& e) {
        std::cerr << error_json("budget_exceeded", e.what()).dump() << "\n";
        return 3;
    } catch (const ss::InvalidInput& e) {
        std::cerr << error_json("invalid_input", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json("failure", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}
