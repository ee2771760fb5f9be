#include "codesign/report.hpp"

#include <cstdio>
#include <sstream>

namespace codesign::cli {

using json = nlohmann::ordered_json;

json Report::to_json() const {
  json out = json::object();
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["command"] = command;
  out["seed"] = seed;
  out["config"] = config_echo;
  json jt = json::array();
  for (const ReportTable& t : tables) {
    json table = json::object();
    table["name"] = t.name;
    table["columns"] = t.columns;
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    table["rows"] = std::move(rows);
    jt.push_back(std::move(table));
  }
  out["tables"] = std::move(jt);
  return out;
}

std::string Report::to_json_text() const { return to_json().dump(2) + "\n"; }

namespace {

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.5g", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << " | " << command
     << " | seed " << seed << "\n";
  for (const ReportTable& t : tables) {
    os << "\n== " << t.name << " ==\n";
    std::vector<std::size_t> widths(t.columns.size());
    std::vector<std::vector<std::string>> cells;
    cells.reserve(t.rows.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      widths[c] = t.columns[c].size();
    }
    for (const auto& row : t.rows) {
      std::vector<std::string> r;
      for (std::size_t c = 0; c < row.size(); ++c) {
        r.push_back(cell_text(row[c]));
        if (c < widths.size()) widths[c] = std::max(widths[c], r.back().size());
      }
      cells.push_back(std::move(r));
    }
    auto pad = [&](const std::string& s, std::size_t w) {
      std::string out = s;
      out.resize(w, ' ');
      return out;
    };
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      os << (c ? "  " : "") << pad(t.columns[c], widths[c]);
    }
    os << "\n";
    for (const auto& r : cells) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        os << (c ? "  " : "") << pad(r[c], c < widths.size() ? widths[c] : r[c].size());
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace codesign::cli
