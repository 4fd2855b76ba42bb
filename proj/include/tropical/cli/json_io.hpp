#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tropical/core.hpp"
#include "tropical/errors.hpp"
#include "tropical/rational.hpp"

namespace tropical::cli {

using Json = nlohmann::ordered_json;

struct InputDocument {
  std::vector<std::vector<ExtendedRational>> rows;
  Json options = Json::object();

  PointConfiguration configuration() const {
    std::vector<TropicalPoint> pts;
    for (const auto& row : rows) {
      std::vector<Rational> c;
      for (const auto& x : row) c.push_back(x.value());
      pts.emplace_back(std::move(c));
    }
    return PointConfiguration(std::move(pts));
  }
};

namespace detail {

struct Position {
  std::size_t line = 1, column = 1;
};

inline Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Offset of the start of the value at path inside a syntactically valid
// document. A string step is an object key, a number step an array index.
class PathLocator {
 public:
  explicit PathLocator(std::string_view text) : s_(text) {}

  std::size_t find(const std::vector<std::variant<std::string, std::size_t>>& path) {
    i_ = 0;
    ws();
    for (const auto& step : path) {
      if (const auto* key = std::get_if<std::string>(&step)) {
        if (peek() != '{') return i_;
        ++i_;
        while (true) {
          ws();
          if (peek() != '"') return i_;
          const std::string k = string();
          ws();
          ++i_;  // ':'
          ws();
          if (k == *key) break;
          skip();
          ws();
          if (peek() == ',') ++i_;
        }
      } else {
        const std::size_t idx = std::get<std::size_t>(step);
        if (peek() != '[') return i_;
        ++i_;
        ws();
        for (std::size_t k = 0; k < idx; ++k) {
          skip();
          ws();
          if (peek() != ',') return i_;
          ++i_;
          ws();
        }
      }
    }
    return i_;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\n' || s_[i_] == '\r' || s_[i_] == '\t')) ++i_;
  }
  std::string string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }
  void skip() {
    const char c = peek();
    if (c == '"') {
      string();
    } else if (c == '[' || c == '{') {
      int depth = 0;
      do {
        const char x = peek();
        if (x == '"') {
          string();
          continue;
        }
        if (x == '[' || x == '{') ++depth;
        if (x == ']' || x == '}') --depth;
        ++i_;
      } while (depth > 0 && i_ < s_.size());
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ']' && s_[i_] != '}' && s_[i_] != ' ' &&
             s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
        ++i_;
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

// Integers as JSON numbers when they fit, otherwise "p/q" strings.
inline Json to_json(const Rational& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return Json(x.get_num().get_si());
  return Json(to_string(x));
}

inline Json to_json(const ExtendedRational& x) { return x.is_infinite() ? Json("inf") : to_json(x.value()); }

inline Json to_json(const TropicalPoint& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const IndexSet& s, Index base) {
  Json a = Json::array();
  for (Index i : s) a.push_back(i + base);
  return a;
}

// A JSON scalar as a rational: integers, or strings "p/q" / "inf".
inline std::optional<ExtendedRational> scalar_value(const Json& v, bool allow_infinity, std::string& why) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return ExtendedRational(Rational(std::to_string(v.get<std::uint64_t>())));
    return ExtendedRational(Rational(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_number_float()) {
    why = "floating-point numbers are not exact; write rationals as \"p/q\" strings";
    return std::nullopt;
  }
  if (v.is_string()) {
    try {
      return ExtendedRational::parse(v.get<std::string>(), allow_infinity);
    } catch (const ParseError& e) {
      why = e.what();
      return std::nullopt;
    }
  }
  why = "expected an integer or a rational string";
  return std::nullopt;
}

// {"points": [[...], ...], "options": {...}} or a bare array of rows.
inline InputDocument parse_input(std::string_view text, bool allow_infinity = false) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto p = detail::position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("malformed JSON: ") + e.what(), p.line, p.column);
  }
  using Step = std::variant<std::string, std::size_t>;
  std::vector<Step> prefix;
  auto fail = [&](const std::string& what, std::vector<Step> path) -> ParseError {
    path.insert(path.begin(), prefix.begin(), prefix.end());
    const auto p = detail::position_of(text, detail::PathLocator(text).find(path));
    return ParseError(what, p.line, p.column);
  };

  InputDocument in;
  const Json* rows = &doc;
  if (doc.is_object()) {
    if (!doc.contains("points")) throw fail("input object has no \"points\" member", {});
    for (const auto& [key, value] : doc.items())
      if (key != "points" && key != "options") throw fail("unknown top-level member \"" + key + "\"", {key});
    if (doc.contains("options")) {
      if (!doc["options"].is_object()) throw fail("\"options\" must be an object", {std::string("options")});
      in.options = doc["options"];
    }
    rows = &doc["points"];
    prefix.emplace_back(std::string("points"));
  }
  if (!rows->is_array()) throw fail("points must be an array of rows", {});
  if (rows->empty()) throw fail("points must contain at least one row", {});
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const Json& row = (*rows)[i];
    if (!row.is_array()) throw fail("row " + std::to_string(i + 1) + " is not an array", {i});
    if (row.empty()) throw fail("row " + std::to_string(i + 1) + " is empty", {i});
    if (i > 0 && row.size() != in.rows.front().size())
      throw fail("ragged input: row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                     " entries, expected " + std::to_string(in.rows.front().size()),
                 {i});
    std::vector<ExtendedRational> r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::string why;
      auto v = scalar_value(row[j], allow_infinity, why);
      if (!v) throw fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + why, {i, j});
      r.push_back(std::move(*v));
    }
    in.rows.push_back(std::move(r));
  }
  return in;
}

// "1,2/3,4" or "1 2/3 4".
inline std::vector<Rational> parse_coordinate_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && text[j] != ' ') ++j;
    if (j > i) {
      try {
        out.push_back(parse_rational(text.substr(i, j - i)));
      } catch (const ParseError& e) {
        throw ParseError(std::string("coordinate list: ") + e.what(), 1, i + 1);
      }
    }
    i = j;
  }
  if (out.empty()) throw ParseError("coordinate list is empty", 1, 1);
  return out;
}

}  // namespace tropical::cli
