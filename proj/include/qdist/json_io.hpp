#pragma once

#include <string>

#include "json.hpp"

#include "qdist/constants.hpp"
#include "qdist/error.hpp"
#include "qdist/families.hpp"
#include "qdist/hilbert_sphere.hpp"

namespace qdist {

using json = nlohmann::ordered_json;

/// {"dim": D, "re": [[...]], "im": [[...]]}; "im" may be omitted.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);
json real_matrix_to_json(const Mat& m);

/// {"re": [...], "im": [...], "labels": [...]}; "im" and "labels" are optional.
AmplitudeState state_from_json(const json& j);
json state_to_json(const AmplitudeState& s);

/// Reads any subset of {"hbar", "c", "k_B", "G"}, or {"preset": "si" | "natural"}.
Constants constants_from_json(const json& j);
/// Constants from the file named by QDIST_CONSTANTS, or natural units when unset.
Constants constants_from_env();

/// Parses a JSON file; throws InvalidInput naming the path on failure.
json read_json_file(const std::string& path);

/// {"error": kind, "module": ..., "message": ..., "category": "validation" | "numerical"}
json error_to_json(const Error& e);

}  // namespace qdist
