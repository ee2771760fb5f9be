#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace codesign::cli {

inline constexpr const char* kToolName = "codesign-lab";
inline constexpr const char* kToolVersion = "0.1.0";

// One named result table: labeled numeric (or string) cells, units encoded in
// the column names ("_us", "_bytes", ...).
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

// Machine/human analysis report. Rendering is deterministic: identical config
// and seed produce byte-identical JSON.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config_echo;
  std::vector<ReportTable> tables;

  void add_table(ReportTable t) { tables.push_back(std::move(t)); }

  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;  // pretty, trailing newline
  std::string to_text() const;       // human tables, 5 significant digits
};

}  // namespace codesign::cli
