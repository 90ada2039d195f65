#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "switchstab/bounds.hpp"
#include "switchstab/criteria.hpp"
#include "switchstab/families.hpp"
#include "switchstab/figure.hpp"
#include "switchstab/norm_approx.hpp"
#include "switchstab/system.hpp"

namespace switchstab {
namespace io {

/// Class file: {"m": M, "n": N, "matrices": [[row-major entries], ...]},
/// the flattened coordinates in member-major order.
MatrixClass class_from_json(const nlohmann::json& j);
MatrixClass load_class(const std::string& path);
nlohmann::json class_to_json(const MatrixClass& cls);

/// Word file: a JSON array of 1-based indices, e.g. [1, 2, 1].
Word word_from_json(const nlohmann::json& j);
Word load_word(const std::string& path);

/// Vector file: an array of vectors, e.g. [[1, 0], [0.25, 0.5]].
std::vector<Vec> vectors_from_json(const nlohmann::json& j);
std::vector<Vec> load_vectors(const std::string& path);

/// Mixing-class file: {"n": N, "rows": [[a_i1..a_iN], ...]}.
MixClassSpec mix_spec_from_json(const nlohmann::json& j);
MixClassSpec load_mix_spec(const std::string& path);

/// Family shorthand "t:n", "s:n", or a plain parameter value.
struct FamilySpec {
    double t = 0.0;
    std::string label; // echo of the shorthand
};
FamilySpec parse_family_spec(const std::string& text);

nlohmann::json bounds_to_json(const BoundsReport& rep);
nlohmann::json check_results_to_json(const std::vector<family::CheckResult>& checks);
nlohmann::json contraction_to_json(const ContractionReport& rep);
nlohmann::json cross_validation_to_json(const CrossValidation& cv);

/// Reads a whole file; throws InvalidInput when unreadable.
std::string read_file(const std::string& path);
nlohmann::json load_json(const std::string& path);

} // namespace io
} // namespace switchstab
