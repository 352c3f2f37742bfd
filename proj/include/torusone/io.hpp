#pragma once

// JSON documents for (A, P) and for the values the CLI reports.
//
//   {"A": [["0","1"], ["-1","-1"], ["1","0"]],
//    "P": {"l": [[1,3],[3],[2]], "d": [[-1,-2,1,1]], "dprime": [[]]}}
//
// Rationals are strings "p" or "p/q". "A" may be omitted (standard A),
// "dprime" may be omitted or empty (m = 0).

#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/grading.hpp"
#include "torusone/presentation.hpp"

namespace torusone {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

struct InputDocument {
  AData A;
  PData P;
  bool operator==(const InputDocument&) const = default;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline Integer parse_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_string()) {
    static const std::regex re("-?[0-9]+");
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, re)) return Integer(s);
  }
  parse_fail(where, "expected an integer, got " + j.dump());
}

inline long parse_exponent(const Json& j, const std::string& where) {
  Integer v = parse_integer(j, where);
  if (v < 1 || v > 1000000) parse_fail(where, "exponent out of range");
  return v.convert_to<long>();
}

inline IntMatrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of rows");
  IntMatrix m(rows, cols);
  // an empty d' may be written as [] or as rows of []
  if (j.empty() && cols == 0) return m;
  if (j.size() != rows)
    parse_fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  for (std::size_t a = 0; a < rows; ++a) {
    const Json& row = j[a];
    if (!row.is_array() || row.size() != cols)
      parse_fail(where + "[" + std::to_string(a) + "]", "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(a, c) = parse_integer(row[c], where + "[" + std::to_string(a) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

}  // namespace detail

inline Rational parse_rational(const std::string& s) {
  static const std::regex re("(-?[0-9]+)(/([0-9]+))?");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("not a rational \"p\" or \"p/q\": \"" + s + "\"");
  Integer num(m[1].str());
  Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
  if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
  return Rational(num, den);
}

inline InputDocument parse_document(const Json& j) {
  if (!j.is_object()) throw ParseError("document: expected a JSON object");
  if (!j.contains("P")) throw ParseError("document: missing \"P\"");
  const Json& p = j.at("P");
  if (!p.is_object()) throw ParseError("P: expected an object");
  if (!p.contains("l") || !p.contains("d")) throw ParseError("P: needs \"l\" and \"d\"");
  const Json& jl = p.at("l");
  if (!jl.is_array() || jl.empty()) throw ParseError("P.l: expected a nonempty array of blocks");
  std::vector<std::vector<long>> l;
  std::size_t n = 0;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string where = "P.l[" + std::to_string(i) + "]";
    if (!jl[i].is_array() || jl[i].empty()) throw ParseError(where + ": expected a nonempty array");
    std::vector<long> block;
    for (std::size_t k = 0; k < jl[i].size(); ++k)
      block.push_back(detail::parse_exponent(jl[i][k], where + "[" + std::to_string(k) + "]"));
    n += block.size();
    l.push_back(std::move(block));
  }
  const Json& jd = p.at("d");
  if (!jd.is_array() || jd.empty()) throw ParseError("P.d: expected a nonempty array of rows");
  const std::size_t s = jd.size();
  IntMatrix d = detail::parse_matrix(jd, s, n, "P.d");
  std::size_t m = 0;
  const Json empty = Json::array();
  const Json& jdp = p.contains("dprime") ? p.at("dprime") : empty;
  if (!jdp.is_array()) throw ParseError("P.dprime: expected an array of rows");
  if (!jdp.empty()) {
    if (!jdp[0].is_array()) throw ParseError("P.dprime[0]: expected an array");
    m = jdp[0].size();
  }
  IntMatrix dp = detail::parse_matrix(jdp, s, m, "P.dprime");
  for (const auto& [key, _] : p.items())
    if (key != "l" && key != "d" && key != "dprime") throw ParseError("P: unknown key \"" + key + "\"");

  InputDocument doc{AData::standard(l.size() - 1), PData(l, d, dp)};
  if (j.contains("A")) {
    const Json& ja = j.at("A");
    if (!ja.is_array()) throw ParseError("A: expected an array of columns");
    doc.A.columns.clear();
    for (std::size_t i = 0; i < ja.size(); ++i) {
      const std::string where = "A[" + std::to_string(i) + "]";
      if (!ja[i].is_array() || ja[i].size() != 2) throw ParseError(where + ": expected a pair");
      std::array<Rational, 2> col;
      for (std::size_t k = 0; k < 2; ++k) {
        if (!ja[i][k].is_string()) throw ParseError(where + ": entries are strings \"p\" or \"p/q\"");
        col[k] = parse_rational(ja[i][k].get<std::string>());
      }
      doc.A.columns.push_back(col);
    }
  }
  for (const auto& [key, _] : j.items())
    if (key != "A" && key != "P") throw ParseError("document: unknown key \"" + key + "\"");
  return doc;
}

inline InputDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

inline InputDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(detail::integer_json(x));
  return out;
}

inline Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t a = 0; a < m.rows(); ++a) out.push_back(to_json(m.row(a)));
  return out;
}

inline Json to_json(const AData& a) {
  Json out = Json::array();
  for (const auto& c : a.columns) out.push_back(Json::array({format_rational(c[0]), format_rational(c[1])}));
  return out;
}

inline Json to_json(const PData& p) {
  Json l = Json::array();
  for (const auto& b : p.exponents()) l.push_back(b);
  return {{"l", l}, {"d", to_json(p.d())}, {"dprime", to_json(p.dprime())}};
}

inline Json to_json(const InputDocument& doc) { return {{"A", to_json(doc.A)}, {"P", to_json(doc.P)}}; }

inline std::string serialize_document(const InputDocument& doc) { return to_json(doc).dump(2) + "\n"; }

// group element in canonical coordinates as {free: [...], torsion: [...]}
inline Json group_element_json(const AbelianGroupStructure& G, const IntVector& w) {
  return {{"free", to_json(G.free_part(w))}, {"torsion", to_json(G.torsion_part(w))}};
}

inline Json group_json(const AbelianGroupStructure& G) {
  return {{"free_rank", G.free_rank()}, {"torsion", to_json(G.torsion())}, {"structure", G.describe()}};
}

// compact form: "(3,1)" or "(3 | 1 mod 2)"
inline std::string format_group_element(const AbelianGroupStructure& G, const IntVector& w) {
  std::string out = "(";
  auto f = G.free_part(w), t = G.torsion_part(w);
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i].str();
  if (!t.empty()) {
    out += " |";
    for (std::size_t i = 0; i < t.size(); ++i) out += " " + t[i].str() + " mod " + G.torsion()[i].str();
  }
  return out + ")";
}

}  // namespace torusone
