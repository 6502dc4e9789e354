#pragma once

// JSON encodings. Exponents travel as "num/den" strings so that degree
// bookkeeping stays exact.
//
//   term:  {"c": 1.5, "px": "1/2", "py": "0", "sx": true, "sy": false}
//   field: {"alpha": "1/2", "f": [term...], "g": [term...]}
//   spec:  {"orientation": "ccw", "epsilon": 0.01, "b": [...], "fields": [field...]}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avgdeg/averaging.hpp"
#include "avgdeg/errors.hpp"
#include "avgdeg/field_algebra.hpp"
#include "avgdeg/flow_sim.hpp"
#include "avgdeg/monomial_classifier.hpp"

namespace avgdeg::io {

using nlohmann::json;

class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

inline double number(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

inline int integer(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

inline bool boolean(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw SchemaError(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

inline Rational rational(const json& j, const char* key, const char* fallback = nullptr) {
  if (!j.contains(key)) {
    if (fallback) return Rational::parse(fallback);
    throw SchemaError(std::string("missing key '") + key + "'");
  }
  const json& v = j.at(key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw SchemaError(std::string("'") + key + "' must be a \"num/den\" string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace detail

// --- encoders ---------------------------------------------------------------

inline json to_json(const SignedPowerTerm& t) {
  return json{{"c", t.coeff()},
              {"px", t.x_exp().str()},
              {"py", t.y_exp().str()},
              {"sx", t.x_signed()},
              {"sy", t.y_signed()}};
}

inline json to_json(const HomogeneousField& f) {
  json fj = json::array(), gj = json::array();
  for (const auto& t : f.f_terms()) fj.push_back(to_json(t));
  for (const auto& t : f.g_terms()) gj.push_back(to_json(t));
  return json{{"alpha", f.alpha().str()}, {"f", fj}, {"g", gj}};
}

inline json to_json(const PerturbationSpec& s) {
  json fields = json::array();
  for (const auto& f : s.fields()) fields.push_back(to_json(f));
  return json{{"orientation", s.orientation() == Orientation::ccw ? "ccw" : "cw"},
              {"epsilon", s.epsilon()},
              {"b", s.b()},
              {"fields", fields}};
}

inline json to_json(const AveragedFunction& h) {
  return json{{"beta", h.exponents()}, {"c", h.coefficients()}};
}

inline json to_json(const RootReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots) {
    roots.push_back({{"z", root.z}, {"deg", root.interval_degree}, {"dsign", root.derivative_sign}});
  }
  return json{{"roots", roots},
              {"descartes", r.descartes_bound},
              {"bracket", {r.bracket.lo, r.bracket.hi}}};
}

inline json to_json(const LimitCycleCertificate& c) {
  return json{{"r", c.r_star},
              {"residual", c.residual},
              {"dP", c.map_derivative},
              {"hyperbolic", c.hyperbolic},
              {"eps", c.epsilon}};
}

inline json to_json(const FixedPointReport& r) {
  json cycles = json::array(), failures = json::array();
  for (const auto& c : r.cycles) cycles.push_back(to_json(c));
  for (const auto& f : r.failures) failures.push_back({{"r", f.r}, {"error", f.message}});
  return json{{"certificates", cycles}, {"failures", failures}};
}

inline json to_json(const ContinuationTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"eps", r.epsilon}, {"r", r.r_star}, {"gap", r.gap}});
  return json{{"rows", rows}, {"non_increasing", t.non_increasing}};
}

inline json to_json(const MonomialSystem& s) {
  return json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"p", s.p}, {"q", s.q},
              {"i", s.i}, {"j", s.j}, {"k", s.k}, {"l", s.l}};
}

inline json to_json(const NoCycleCertificate& c) {
  json trace = json::array(), checks = json::array();
  for (const auto& r : c.reduction_trace) {
    trace.push_back(std::string(1, r.variable) + "^" + std::to_string(r.power));
  }
  for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"ok", ch.passed}});
  return json{{"property", to_string(c.property)},
              {"case", c.case_label},
              {"trace", trace},
              {"canonicalization", c.canonicalization},
              {"checks", checks},
              {"reduced", to_json(c.reduced)}};
}

// --- decoders ---------------------------------------------------------------

inline SignedPowerTerm term_from_json(const json& j) {
  try {
    return SignedPowerTerm(detail::number(j, "c"), detail::rational(j, "px", "0"),
                           detail::boolean(j, "sx", false), detail::rational(j, "py", "0"),
                           detail::boolean(j, "sy", false));
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

inline HomogeneousField field_from_json(const json& j) {
  auto terms = [&](const char* key) {
    std::vector<SignedPowerTerm> out;
    if (!j.contains(key)) return out;
    const json& arr = j.at(key);
    if (!arr.is_array()) throw SchemaError(std::string("'") + key + "' must be an array");
    for (const auto& t : arr) out.push_back(term_from_json(t));
    return out;
  };
  try {
    return HomogeneousField(detail::rational(j, "alpha"), terms("f"), terms("g"));
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

inline PerturbationSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("spec must be a JSON object");
  Orientation orientation = Orientation::ccw;
  if (j.contains("orientation")) {
    const json& o = j.at("orientation");
    if (o == "ccw") orientation = Orientation::ccw;
    else if (o == "cw") orientation = Orientation::cw;
    else throw SchemaError("orientation must be \"ccw\" or \"cw\"");
  }
  const json& fields_json = detail::member(j, "fields");
  const json& b_json = detail::member(j, "b");
  if (!fields_json.is_array() || !b_json.is_array()) {
    throw SchemaError("'fields' and 'b' must be arrays");
  }
  std::vector<HomogeneousField> fields;
  for (const auto& f : fields_json) fields.push_back(field_from_json(f));
  std::vector<double> b;
  for (const auto& v : b_json) {
    if (!v.is_number()) throw SchemaError("'b' entries must be numbers");
    b.push_back(v.get<double>());
  }
  const double eps = j.contains("epsilon") ? detail::number(j, "epsilon") : 0.0;
  try {
    return PerturbationSpec(std::move(fields), std::move(b), eps, orientation);
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

inline MonomialSystem monomial_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("monomial system must be a JSON object");
  MonomialSystem s;
  s.a = detail::number(j, "a");
  s.b = detail::number(j, "b");
  s.c = detail::number(j, "c");
  s.p = detail::integer(j, "p");
  s.q = detail::integer(j, "q");
  s.i = detail::integer(j, "i");
  s.j = detail::integer(j, "j");
  s.k = detail::integer(j, "k");
  s.l = detail::integer(j, "l");
  if (s.p < 0 || s.q < 0 || s.i < 0 || s.j < 0 || s.k < 0 || s.l < 0) {
    throw SchemaError("monomial exponents must be non-negative");
  }
  return s;
}

}  // namespace avgdeg::io
