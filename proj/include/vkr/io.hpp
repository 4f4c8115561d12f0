#pragma once

// Machine-readable results: the document every CLI run produces, its JSON
// form and a plain text rendering.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vkr/homology.hpp"
#include "vkr/laurent.hpp"

namespace vkr {

using json = nlohmann::json;

struct InputEcho {
  std::string command;
  std::string word;
  int N = 0;  // 0: HOMFLY (N = infinity)
  int max_degree = -1;
  int margin = 4;
  bool simplify = true;
  std::vector<int> order;  // 1-based singular letters, empty: direct total complex
  std::optional<std::uint64_t> seed;
  friend bool operator==(const InputEcho&, const InputEcho&) = default;
};

struct Conventions {
  std::string homological = "k: term of the Rouquier complex, F(s) in degrees -1..0, F(s^-1) in 0..1";
  std::string hochschild = "i: shift - p, shift = (n - 1 - writhe)/2 rounded down";
  std::string internal = "j: internal degree, deg x = 2, reported raw";
  std::string change_of_variables;
  int shift = 0;
  // P = sign * a^ea q^eq * (normalized Euler characteristic)
  int normalization_sign = 1;
  int normalization_a = 0;
  int normalization_q = 0;
  friend bool operator==(const Conventions&, const Conventions&) = default;
};

struct ResultDocument {
  InputEcho input;
  Conventions conventions;
  TriGradedSpace table;
  bool stabilized = true;
  std::vector<std::string> warnings;
  Laurent euler;                     // sum (-1)^k A^i Q^j dim (sl_N: sum (-1)^(k+j) q^i dim)
  std::optional<Laurent> normalized;  // Euler characteristic in oracle variables
  std::optional<Laurent> oracle;
  std::string verdict = "none";  // match, mismatch, none
  double seconds = 0;
  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

namespace detail {
inline json integer_to_json(const Integer& c) {
  if (c.fits_slong_p()) return json(static_cast<std::int64_t>(c.get_si()));
  return json(c.get_str());
}
inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer coefficient");
}
}  // namespace detail

/// {"ea,eq": coefficient}
inline json laurent_to_json(const Laurent& p) {
  json o = json::object();
  for (const auto& [k, c] : p.terms()) o[std::to_string(k.first) + "," + std::to_string(k.second)] = detail::integer_to_json(c);
  return o;
}

inline Laurent laurent_from_json(const json& o) {
  if (!o.is_object()) throw std::invalid_argument("polynomial must be an object");
  Laurent p;
  for (const auto& [key, v] : o.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad exponent pair '" + key + "'");
    p.add(std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1)), detail::integer_from_json(v));
  }
  return p;
}

inline json optional_poly(const std::optional<Laurent>& p) { return p ? laurent_to_json(*p) : json(nullptr); }
inline std::optional<Laurent> optional_poly(const json& j) {
  if (j.is_null()) return std::nullopt;
  return laurent_from_json(j);
}

inline json to_json(const ResultDocument& d) {
  json in = {{"command", d.input.command}, {"word", d.input.word},  {"N", d.input.N},
             {"max_degree", d.input.max_degree}, {"stabilization_margin", d.input.margin},
             {"simplify", d.input.simplify}, {"order", d.input.order}};
  in["seed"] = d.input.seed ? json(*d.input.seed) : json(nullptr);
  const auto& c = d.conventions;
  json conv = {{"homological", c.homological},
               {"hochschild", c.hochschild},
               {"internal", c.internal},
               {"change_of_variables", c.change_of_variables},
               {"shift", c.shift},
               {"normalization_monomial", {{"sign", c.normalization_sign}, {"a", c.normalization_a}, {"q", c.normalization_q}}}};
  json table = json::array();
  for (const auto& [k, dim] : d.table.dims) table.push_back({k[0], k[1], k[2], dim});
  return {{"input", in},
          {"conventions", conv},
          {"table", table},
          {"stabilized", d.stabilized},
          {"warnings", d.warnings},
          {"euler", {{"raw", laurent_to_json(d.euler)}, {"normalized", optional_poly(d.normalized)}}},
          {"oracle", optional_poly(d.oracle)},
          {"verdict", d.verdict},
          {"timing", {{"seconds", d.seconds}}}};
}

inline ResultDocument from_json(const json& j) {
  ResultDocument d;
  const json& in = j.at("input");
  d.input.command = in.at("command").get<std::string>();
  d.input.word = in.at("word").get<std::string>();
  d.input.N = in.at("N").get<int>();
  d.input.max_degree = in.at("max_degree").get<int>();
  d.input.margin = in.at("stabilization_margin").get<int>();
  d.input.simplify = in.at("simplify").get<bool>();
  d.input.order = in.at("order").get<std::vector<int>>();
  if (!in.at("seed").is_null()) d.input.seed = in.at("seed").get<std::uint64_t>();
  const json& conv = j.at("conventions");
  auto& c = d.conventions;
  c.homological = conv.at("homological").get<std::string>();
  c.hochschild = conv.at("hochschild").get<std::string>();
  c.internal = conv.at("internal").get<std::string>();
  c.change_of_variables = conv.at("change_of_variables").get<std::string>();
  c.shift = conv.at("shift").get<int>();
  const json& mono = conv.at("normalization_monomial");
  c.normalization_sign = mono.at("sign").get<int>();
  c.normalization_a = mono.at("a").get<int>();
  c.normalization_q = mono.at("q").get<int>();
  for (const auto& row : j.at("table")) {
    if (!row.is_array() || row.size() != 4) throw std::invalid_argument("table rows are [k, i, j, dim]");
    d.table.add(row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<long>());
  }
  d.stabilized = j.at("stabilized").get<bool>();
  d.warnings = j.at("warnings").get<std::vector<std::string>>();
  d.euler = laurent_from_json(j.at("euler").at("raw"));
  d.normalized = optional_poly(j.at("euler").at("normalized"));
  d.oracle = optional_poly(j.at("oracle"));
  d.verdict = j.at("verdict").get<std::string>();
  d.seconds = j.at("timing").at("seconds").get<double>();
  return d;
}

/// Dimension table, one "k i j dim" line per nonzero entry.
inline std::string table_text(const TriGradedSpace& t) {
  std::ostringstream os;
  for (const auto& [k, dim] : t.dims) os << k[0] << " " << k[1] << " " << k[2] << " " << dim << "\n";
  return os.str();
}

inline std::string to_text(const ResultDocument& d) {
  std::ostringstream os;
  os << d.input.command << " \"" << d.input.word << "\"";
  if (d.input.N > 0) os << " N=" << d.input.N;
  os << "\n# k i j dim\n" << table_text(d.table);
  os << "total dimension: " << d.table.total() << (d.stabilized ? " (stabilized)" : " (not stabilized)") << "\n";
  bool sln = d.input.N > 0;
  os << "euler: " << (sln ? d.euler.str("a", "q") : d.euler.str("A", "Q")) << "\n";
  if (d.normalized) os << "normalized: " << d.normalized->str() << "\n";
  if (d.oracle) os << "oracle: " << d.oracle->str() << "\n";
  os << "verdict: " << d.verdict << "\n";
  for (const auto& w : d.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace vkr
