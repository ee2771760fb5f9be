#pragma once

#include <string>

#include <json.hpp>

namespace codesign::cli {

// Minimal TOML reader covering what the analysis configs use: comments,
// [tables], [[arrays of tables]], dotted keys, basic strings, integers,
// floats (incl. inf/nan), booleans, and single-line arrays of scalars.
// Multiline strings, datetimes and inline tables are not supported.
// Returns an object tree; throws Error(CONFIG_PARSE, ...) with a line number.
nlohmann::ordered_json parse_toml(const std::string& text);

nlohmann::ordered_json parse_toml_file(const std::string& path);

}  // namespace codesign::cli
