#include "codesign/minitoml.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "codesign/error.hpp"

namespace codesign::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::CONFIG_PARSE, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// strip a trailing comment that is not inside a string
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_str) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_str = false;
      }
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

std::vector<std::string> split_path(const std::string& s, int line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == '.') {
      if (cur.empty()) fail(line, "empty path segment");
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (trim(cur).empty()) fail(line, "empty path segment");
  parts.push_back(trim(cur));
  return parts;
}

std::string parse_basic_string(const std::string& s, std::size_t& pos, int line) {
  std::string out;
  ++pos;  // opening quote
  while (pos < s.size() && s[pos] != '"') {
    char c = s[pos];
    if (c == '\\') {
      ++pos;
      if (pos >= s.size()) fail(line, "dangling escape");
      switch (s[pos]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: fail(line, std::string("unsupported escape \\") + s[pos]);
      }
    } else {
      out += c;
    }
    ++pos;
  }
  if (pos >= s.size()) fail(line, "unterminated string");
  ++pos;  // closing quote
  return out;
}

json parse_scalar(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (v.empty()) fail(line, "missing value");
  if (v.front() == '"') {
    std::size_t pos = 0;
    std::string s = parse_basic_string(v, pos, line);
    if (trim(v.substr(pos)) != "") fail(line, "trailing characters after string");
    return json(s);
  }
  if (v == "true") return json(true);
  if (v == "false") return json(false);

  std::string digits = v;
  digits.erase(std::remove(digits.begin(), digits.end(), '_'), digits.end());
  if (digits.empty()) fail(line, "invalid value '" + v + "'");

  const bool looks_float =
      digits.find('.') != std::string::npos ||
      digits.find('e') != std::string::npos ||
      digits.find('E') != std::string::npos ||
      digits.find("inf") != std::string::npos ||
      digits.find("nan") != std::string::npos;
  try {
    std::size_t used = 0;
    if (!looks_float) {
      const long long i = std::stoll(digits, &used);
      if (used == digits.size()) return json(i);
    }
    const double d = std::stod(digits, &used);
    if (used != digits.size()) fail(line, "invalid number '" + v + "'");
    return json(d);
  } catch (const std::exception&) {
    fail(line, "invalid value '" + v + "'");
  }
}

json parse_value(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') fail(line, "arrays must close on the same line");
    json arr = json::array();
    std::string body = v.substr(1, v.size() - 2);
    std::string cur;
    bool in_str = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const char c = body[i];
      if (in_str) {
        cur += c;
        if (c == '\\' && i + 1 < body.size()) cur += body[++i];
        else if (c == '"') in_str = false;
      } else if (c == '"') {
        cur += c;
        in_str = true;
      } else if (c == ',') {
        if (trim(cur).empty()) fail(line, "empty array element");
        arr.push_back(parse_scalar(cur, line));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) arr.push_back(parse_scalar(cur, line));
    return arr;
  }
  return parse_scalar(v, line);
}

json* descend(json* node, const std::vector<std::string>& path, int line,
              std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::string& key = path[i];
    if (node->is_array()) {  // an array of tables: descend into the last entry
      if (node->empty()) fail(line, "array of tables '" + key + "' is empty");
      node = &node->back();
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
  }
  if (node->is_array()) node = &node->back();
  return node;
}

}  // namespace

json parse_toml(const std::string& text) {
  json root = json::object();
  json* current = &root;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      const bool is_array = line.size() > 1 && line[1] == '[';
      const std::string closer = is_array ? "]]" : "]";
      const std::size_t end = line.find(closer);
      if (end == std::string::npos || trim(line.substr(end + closer.size())) != "") {
        fail(line_no, "malformed table header");
      }
      const std::string inner =
          trim(line.substr(is_array ? 2 : 1, end - (is_array ? 2 : 1)));
      if (inner.empty()) fail(line_no, "empty table name");
      const auto path = split_path(inner, line_no);

      json* node = descend(&root, path, line_no, path.size() - 1);
      const std::string& leaf = path.back();
      if (is_array) {
        if (!node->contains(leaf)) (*node)[leaf] = json::array();
        if (!(*node)[leaf].is_array()) fail(line_no, "'" + leaf + "' is not an array of tables");
        (*node)[leaf].push_back(json::object());
        current = &(*node)[leaf].back();
      } else {
        if (!node->contains(leaf)) (*node)[leaf] = json::object();
        json* t = &(*node)[leaf];
        if (t->is_array()) t = &t->back();
        if (!t->is_object()) fail(line_no, "'" + leaf + "' is not a table");
        current = t;
      }
      continue;
    }

    const std::size_t eq = [&] {
      bool in_str = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (in_str) {
          if (line[i] == '\\') ++i;
          else if (line[i] == '"') in_str = false;
        } else if (line[i] == '"') {
          in_str = true;
        } else if (line[i] == '=') {
          return i;
        }
      }
      return std::string::npos;
    }();
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");

    const std::string keypart = trim(line.substr(0, eq));
    if (keypart.empty()) fail(line_no, "empty key");
    const auto path = split_path(keypart, line_no);
    json* node = descend(current, path, line_no, path.size() - 1);
    const std::string& leaf = path.back();
    if (node->contains(leaf)) fail(line_no, "duplicate key '" + leaf + "'");
    (*node)[leaf] = parse_value(line.substr(eq + 1), line_no);
  }
  return root;
}

json parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::CONFIG_PARSE, "cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_toml(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace codesign::cli
