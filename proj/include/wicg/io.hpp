#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wicg/census.hpp"
#include "wicg/circulant.hpp"
#include "wicg/pst.hpp"

namespace wicg {

// Graph-spec documents and the machine-readable report format.
//
// A graph spec is one JSON object:
//   {"n": 6, "divisor_weights": {"1": 4, "3": 1}}
//   {"n": 6, "row": [0, 4, 0, 1, 0, 4], "mode": "graph"}
// with exactly one of divisor_weights / row, and mode defaulting to "graph".

using json = nlohmann::json;

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphSpec {
  std::int64_t n = 0;
  std::variant<DivisorWeights, RowVector> source;
  GraphMode mode = GraphMode::Graph;

  bool has_divisor_weights() const { return std::holds_alternative<DivisorWeights>(source); }
};

inline std::string_view to_string(GraphMode m) { return m == GraphMode::Graph ? "graph" : "digraph"; }

namespace detail {

inline std::int64_t require_integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw SpecError(what + " must be an integer");
  return v.get<std::int64_t>();
}

inline std::int64_t parse_divisor_key(const std::string& key) {
  if (key.empty() || key.size() > 18 || key.find_first_not_of("0123456789") != std::string::npos) {
    throw SpecError("divisor_weights key \"" + key + "\" is not a decimal integer");
  }
  return std::stoll(key);
}

}  // namespace detail

inline GraphSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("graph spec must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "divisor_weights" && key != "row" && key != "mode") {
      throw SpecError("unknown graph spec field \"" + key + "\"");
    }
  }
  if (!doc.contains("n")) throw SpecError("graph spec is missing \"n\"");
  GraphSpec spec;
  spec.n = detail::require_integer(doc.at("n"), "n");
  if (spec.n < 2) throw SpecError("n must be at least 2");

  if (doc.contains("mode")) {
    const auto& m = doc.at("mode");
    if (!m.is_string()) throw SpecError("mode must be a string");
    const auto s = m.get<std::string>();
    if (s == "graph") {
      spec.mode = GraphMode::Graph;
    } else if (s == "digraph") {
      spec.mode = GraphMode::Digraph;
    } else {
      throw SpecError("mode must be \"graph\" or \"digraph\", got \"" + s + "\"");
    }
  }

  const bool has_weights = doc.contains("divisor_weights");
  const bool has_row = doc.contains("row");
  if (has_weights == has_row) throw SpecError("graph spec needs exactly one of \"divisor_weights\" or \"row\"");

  try {
    if (has_weights) {
      const auto& obj = doc.at("divisor_weights");
      if (!obj.is_object()) throw SpecError("divisor_weights must be an object");
      std::map<std::int64_t, std::int64_t> weights;
      for (const auto& [key, value] : obj.items()) {
        const auto d = detail::parse_divisor_key(key);
        if (d < 1 || d >= spec.n || spec.n % d != 0) {
          throw SpecError("divisor_weights key " + key + " is not a proper divisor of n = " + std::to_string(spec.n));
        }
        if (!weights.emplace(d, detail::require_integer(value, "weight for divisor " + key)).second) {
          throw SpecError("duplicate divisor key " + key);
        }
      }
      spec.source = DivisorWeights(spec.n, std::move(weights));
    } else {
      const auto& arr = doc.at("row");
      if (!arr.is_array()) throw SpecError("row must be an array");
      if (static_cast<std::int64_t>(arr.size()) != spec.n) {
        throw SpecError("row has " + std::to_string(arr.size()) + " entries, expected n = " + std::to_string(spec.n));
      }
      std::vector<std::int64_t> c;
      c.reserve(arr.size());
      for (const auto& v : arr) c.push_back(detail::require_integer(v, "row entry"));
      spec.source = RowVector(std::move(c), spec.mode);
    }
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return spec;
}

inline GraphSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed graph spec: ") + e.what());
  }
  return parse_spec(doc);
}

/// Row form of any spec.
inline RowVector row_of(const GraphSpec& spec) {
  if (const auto* w = std::get_if<DivisorWeights>(&spec.source)) return expand(*w);
  return std::get<RowVector>(spec.source);
}

/// Canonical form when the spec is class-constant; nullopt otherwise.
inline std::optional<DivisorWeights> weights_of(const GraphSpec& spec) {
  if (const auto* w = std::get_if<DivisorWeights>(&spec.source)) return *w;
  const auto& row = std::get<RowVector>(spec.source);
  if (row[0] != 0) return std::nullopt;
  auto collapsed = collapse(row);
  if (auto* w = std::get_if<DivisorWeights>(&collapsed)) return *w;
  return std::nullopt;
}

inline json spec_document(const DivisorWeights& w) {
  json weights = json::object();
  for (auto [d, c] : w.weights()) weights[std::to_string(d)] = c;
  return json{{"n", w.n()}, {"divisor_weights", std::move(weights)}};
}

inline json spec_document(const GraphSpec& spec) {
  json doc;
  if (const auto* w = std::get_if<DivisorWeights>(&spec.source)) {
    doc = spec_document(*w);
  } else {
    doc = json{{"n", spec.n}, {"row", std::get<RowVector>(spec.source).entries()}};
  }
  doc["mode"] = std::string(to_string(spec.mode));
  return doc;
}

// Machine-readable encodings. Each to_json has a matching from_json so reports
// can be read back.

inline void to_json(json& j, const PstCertificate& c) {
  j = json{{"m", c.m},
           {"time", c.time},
           {"time_over_2pi", "1/" + std::to_string(c.time_denominator())},
           {"source", c.source},
           {"target", c.target},
           {"fidelity", c.fidelity}};
}

inline void from_json(const json& j, PstCertificate& c) {
  j.at("m").get_to(c.m);
  j.at("time").get_to(c.time);
  j.at("source").get_to(c.source);
  j.at("target").get_to(c.target);
  j.at("fidelity").get_to(c.fidelity);
}

inline void to_json(json& j, const PstVerdict& v) {
  j = json{{"exists", v.exists}, {"reason", std::string(to_string(v.reason))}};
  if (v.certificate) j["certificate"] = *v.certificate;
}

inline void from_json(const json& j, PstVerdict& v) {
  j.at("exists").get_to(v.exists);
  v.reason = pst_reason_from_string(j.at("reason").get<std::string>());
  if (j.contains("certificate")) {
    v.certificate = j.at("certificate").get<PstCertificate>();
  } else {
    v.certificate.reset();
  }
}

inline void to_json(json& j, const FidelityTrace& t) { j = json{{"times", t.times}, {"values", t.values}}; }

inline void from_json(const json& j, FidelityTrace& t) {
  j.at("times").get_to(t.times);
  j.at("values").get_to(t.values);
}

inline void to_json(json& j, const ExactSpectrum& s) { j = json{{"kind", "exact"}, {"n", s.n}, {"values", s.values}}; }

inline void from_json(const json& j, ExactSpectrum& s) {
  if (j.at("kind") != "exact") throw SpecError("expected an exact spectrum");
  j.at("n").get_to(s.n);
  j.at("values").get_to(s.values);
}

inline void to_json(json& j, const NumericSpectrum& s) {
  json values = json::array();
  for (const auto& v : s.values) values.push_back(json::array({v.real(), v.imag()}));
  j = json{{"kind", "numeric"}, {"n", s.n}, {"values", std::move(values)}};
}

inline void from_json(const json& j, NumericSpectrum& s) {
  if (j.at("kind") != "numeric") throw SpecError("expected a numeric spectrum");
  j.at("n").get_to(s.n);
  s.values.clear();
  for (const auto& v : j.at("values")) s.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
}

inline void to_json(json& j, const TwoDivisorCount& c) {
  json pairs = json::array();
  for (auto [a, b] : c.pairs) pairs.push_back(json::array({a, b}));
  j = json{{"count", c.count}, {"formula", c.formula}, {"connected_count", c.connected_count}, {"pairs", pairs}};
}

inline void from_json(const json& j, TwoDivisorCount& c) {
  j.at("count").get_to(c.count);
  j.at("formula").get_to(c.formula);
  j.at("connected_count").get_to(c.connected_count);
  c.pairs.clear();
  for (const auto& p : j.at("pairs")) c.pairs.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
}

inline void to_json(json& j, const CensusReport& r) {
  j = json{{"n", r.n},
           {"predicate_hits", r.predicate_hits},
           {"spectral_hits", r.spectral_hits},
           {"weightable_count", r.weightable_count}};
  j["predicted_weightable"] = r.predicted_weightable ? json(*r.predicted_weightable) : json(nullptr);
  j["two_divisor"] = r.two_divisor ? json(*r.two_divisor) : json(nullptr);
}

inline void from_json(const json& j, CensusReport& r) {
  j.at("n").get_to(r.n);
  j.at("predicate_hits").get_to(r.predicate_hits);
  j.at("spectral_hits").get_to(r.spectral_hits);
  j.at("weightable_count").get_to(r.weightable_count);
  const auto& pw = j.at("predicted_weightable");
  r.predicted_weightable = pw.is_null() ? std::nullopt : std::optional<std::int64_t>(pw.get<std::int64_t>());
  const auto& td = j.at("two_divisor");
  r.two_divisor = td.is_null() ? std::nullopt : std::optional<TwoDivisorCount>(td.get<TwoDivisorCount>());
}

}  // namespace wicg
