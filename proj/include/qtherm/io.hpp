// io.hpp — JSON matrix/model ingestion and CSV emission.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qtherm/mean_force.hpp"
#include "qtherm/operator_core.hpp"

namespace qtherm {

// Matrix schema: {"dim": n, "re": [[...]], "im": [[...]]}. "im" may be omitted
// for real matrices. Writers emit 17 significant digits.
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const Matrix& m);

// Model schema: {"dimS":.., "dimR":.., "H_S":{..}, "H_R":{..}, "V":{..}}.
CompositeModel model_from_json(const nlohmann::json& j);
CompositeModel model_from_file(const std::string& filename);

// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

}  // namespace qtherm
