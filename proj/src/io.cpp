#include "switchstab/io.hpp"

#include <fstream>
#include <sstream>

namespace switchstab {
namespace io {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

MatrixClass class_from_json(const json& j) {
    try {
        const int m = j.at("m").get<int>();
        const int n = j.at("n").get<int>();
        const auto& mats = j.at("matrices");
        if (!mats.is_array() || static_cast<int>(mats.size()) != m) {
            throw InvalidInput("class file: \"matrices\" must hold exactly M arrays");
        }
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n) *
                     static_cast<std::size_t>(n));
        for (const auto& entry : mats) {
            if (!entry.is_array() ||
                entry.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
                throw InvalidInput("class file: each matrix needs N*N row-major entries");
            }
            for (const auto& v : entry) flat.push_back(v.get<double>());
        }
        return MatrixClass::from_flat(m, n, flat);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("class file: ") + e.what());
    }
}

MatrixClass load_class(const std::string& path) { return class_from_json(load_json(path)); }

json class_to_json(const MatrixClass& cls) {
    json mats = json::array();
    for (const Mat& m : cls.members()) mats.push_back(m.flat());
    return json{
        {"m", cls.size()}, {"n", cls.dim()}, {"matrices", mats}, {"point", cls.flatten()}};
}

Word word_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("word file: expected a JSON array of indices");
    Word w;
    w.indices.reserve(j.size());
    try {
        for (const auto& v : j) w.indices.push_back(v.get<int>());
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("word file: ") + e.what());
    }
    return w;
}

Word load_word(const std::string& path) { return word_from_json(load_json(path)); }

std::vector<Vec> vectors_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("vector file: expected an array of vectors");
    std::vector<Vec> out;
    try {
        for (const auto& row : j) {
            if (!row.is_array() || row.empty()) {
                throw InvalidInput("vector file: each vector must be a non-empty array");
            }
            out.push_back(Vec::from(row.get<std::vector<double>>()));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("vector file: ") + e.what());
    }
    return out;
}

std::vector<Vec> load_vectors(const std::string& path) {
    return vectors_from_json(load_json(path));
}

MixClassSpec mix_spec_from_json(const json& j) {
    MixClassSpec spec;
    try {
        spec.n = j.at("n").get<int>();
        spec.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("mixing-class file: ") + e.what());
    }
    return spec;
}

MixClassSpec load_mix_spec(const std::string& path) {
    return mix_spec_from_json(load_json(path));
}

FamilySpec parse_family_spec(const std::string& text) {
    FamilySpec spec;
    spec.label = text;
    try {
        if (text.rfind("t:", 0) == 0 || text.rfind("s:", 0) == 0) {
            const std::string num = text.substr(2);
            std::size_t used = 0;
            const int n = std::stoi(num, &used);
            if (used != num.size()) throw InvalidInput("");
            spec.t = text[0] == 't' ? family::stable_parameter(n)
                                    : family::unstable_parameter(n);
        } else {
            std::size_t used = 0;
            spec.t = std::stod(text, &used);
            if (used != text.size()) throw InvalidInput("");
        }
    } catch (const std::exception&) {
        throw InvalidInput("family spec must be t:n, s:n, or a number, got: " + text);
    }
    return spec;
}

json bounds_to_json(const BoundsReport& rep) {
    return json{{"depth", rep.depth},
                {"tolerance", rep.tolerance},
                {"upper_per_depth", rep.upper_per_depth},
                {"lower_per_depth", rep.lower_per_depth},
                {"best_upper", rep.best_upper},
                {"best_lower", rep.best_lower},
                {"witness_lower", rep.witness_lower.indices},
                {"verdict", to_string(rep.verdict)},
                {"products_realized", rep.products_realized}};
}

json check_results_to_json(const std::vector<family::CheckResult>& checks) {
    json arr = json::array();
    for (const family::CheckResult& c : checks) {
        arr.push_back(json{{"name", c.name},
                           {"worst", c.worst},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"detail", c.detail}});
    }
    return arr;
}

json contraction_to_json(const ContractionReport& rep) {
    json j{{"member", rep.member},
           {"samples", rep.samples},
           {"max_truncated_violation", rep.max_truncated_violation},
           {"max_full_violation", rep.max_full_violation}};
    if (rep.worst_truncated_x) j["worst_truncated_x"] = rep.worst_truncated_x->entries();
    if (rep.worst_full_x) j["worst_full_x"] = rep.worst_full_x->entries();
    return j;
}

json cross_validation_to_json(const CrossValidation& cv) {
    json j{{"criterion_stable", cv.criterion_stable},
           {"witnessed", cv.witnessed},
           {"hard_contradiction", cv.hard_contradiction},
           {"bounds", bounds_to_json(cv.bounds)}};
    if (cv.matched_case) j["case"] = to_string(*cv.matched_case);
    if (cv.perron > 0.0) j["perron_root"] = cv.perron;
    return j;
}

} // namespace io
} // namespace switchstab
