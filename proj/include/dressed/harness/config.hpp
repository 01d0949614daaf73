#pragma once

// Scenario configuration for the verification harness (JSON, UTF-8).
//
// {
//   "suite": "all" | "su2" | "leakage" | "exchange" | "encoded" | "nonseparable",
//   "seed": <u64>, "trials": <int >= 1>,
//   "tolerances": { "<suite>": <positive real>, ... },
//   "levels": <int> | [<int>, ...],            // leakage level counts, each in [3, 8]
//   "ring_sizes": [<int>, ...],                // each in [3, 6]
//   "exchange": { "dm": [x, y, z], "J": <positive real> },
//   "leakage": { "f": <real>, "deltas": [<real>, ...], "eps1": <+real>, "eps2": <+real> },
//   "encoded": { "b_field": <real>, "depth": <int >= 0> },
//   "nonseparable": { "deltas": [<positive, descending>] }
// }

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dressed/exchange.hpp"

namespace dressed::harness {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"su2", "leakage", "exchange", "encoded",
                                              "nonseparable"};
  return names;
}

inline bool is_suite_selector(const std::string& s) {
  if (s == "all") return true;
  for (const auto& n : suite_names())
    if (n == s) return true;
  return false;
}

/// Invalid configuration; `field()` is the JSON path of the offending entry.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& msg)
      : std::runtime_error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

struct ScenarioConfig {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int trials = 50;
  std::map<std::string, double> tolerances;  // per-suite override of every upper bound
  std::vector<int> levels{3, 4, 5, 6, 7, 8};
  std::vector<int> ring_sizes{4, 5};

  std::optional<exchange::DMVector> dm;  // extra fixed-D exchange case
  double j = 1.0;

  double f = 1.0;
  std::optional<std::vector<double>> leak_deltas;  // extra fixed leakage model
  double eps1 = 1.0;
  double eps2 = 2.0;

  double b_field = 0.5;
  int depth = 20;

  std::vector<double> ring_deltas{1e-2, 1e-3};

  std::vector<std::string> selected_suites() const {
    if (suite == "all") return suite_names();
    return {suite};
  }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<const char*> known) {
  std::set<std::string> k(known.begin(), known.end());
  for (const auto& [key, _] : obj.items())
    if (!k.count(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
}

inline double real_field(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

inline double positive_field(const json& v, const std::string& path) {
  const double x = real_field(v, path);
  if (!(x > 0.0)) throw ConfigError(path, "must be positive");
  return x;
}

inline long long int_field(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long long>();
}

inline int ranged_int(const json& v, const std::string& path, long long lo, long long hi) {
  const long long x = int_field(v, path);
  if (x < lo || x > hi)
    throw ConfigError(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "], got " + std::to_string(x));
  return static_cast<int>(x);
}

inline std::vector<int> ranged_int_list(const json& v, const std::string& path, long long lo,
                                        long long hi) {
  std::vector<int> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(path, "must not be empty");
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(ranged_int(v[i], path + "[" + std::to_string(i) + "]", lo, hi));
  } else {
    out.push_back(ranged_int(v, path, lo, hi));
  }
  return out;
}

inline std::vector<double> real_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(real_field(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline const json& object_at(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

}  // namespace detail

/// Parses and validates a JSON scenario; missing fields keep their defaults.
inline ScenarioConfig parse_config(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  detail::object_at(doc, "<document>");
  detail::reject_unknown(doc, "",
                         {"suite", "seed", "trials", "tolerances", "levels", "ring_sizes",
                          "exchange", "leakage", "encoded", "nonseparable"});

  ScenarioConfig cfg;
  if (doc.contains("suite")) {
    const json& s = doc["suite"];
    if (!s.is_string() || !is_suite_selector(s.get<std::string>()))
      throw ConfigError("suite", "expected one of all, su2, leakage, exchange, encoded, nonseparable");
    cfg.suite = s.get<std::string>();
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) throw ConfigError("seed", "expected an unsigned 64-bit integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("trials")) cfg.trials = detail::ranged_int(doc["trials"], "trials", 1, 1000000);
  if (doc.contains("tolerances")) {
    const json& t = detail::object_at(doc["tolerances"], "tolerances");
    for (const auto& [key, val] : t.items()) {
      const std::string path = "tolerances." + key;
      if (key == "all" || !is_suite_selector(key)) throw ConfigError(path, "unknown suite");
      cfg.tolerances[key] = detail::positive_field(val, path);
    }
  }
  if (doc.contains("levels")) cfg.levels = detail::ranged_int_list(doc["levels"], "levels", 3, 8);
  if (doc.contains("ring_sizes"))
    cfg.ring_sizes = detail::ranged_int_list(doc["ring_sizes"], "ring_sizes", 3, 6);

  if (doc.contains("exchange")) {
    const json& ex = detail::object_at(doc["exchange"], "exchange");
    detail::reject_unknown(ex, "exchange", {"dm", "J"});
    if (ex.contains("dm")) {
      const auto d = detail::real_list(ex["dm"], "exchange.dm");
      if (d.size() != 3) throw ConfigError("exchange.dm", "expected exactly 3 components");
      cfg.dm = exchange::DMVector(Vec3{d[0], d[1], d[2]});
    }
    if (ex.contains("J")) cfg.j = detail::positive_field(ex["J"], "exchange.J");
  }
  if (doc.contains("leakage")) {
    const json& lk = detail::object_at(doc["leakage"], "leakage");
    detail::reject_unknown(lk, "leakage", {"f", "deltas", "eps1", "eps2"});
    if (lk.contains("f")) cfg.f = detail::real_field(lk["f"], "leakage.f");
    if (lk.contains("deltas")) {
      auto d = detail::real_list(lk["deltas"], "leakage.deltas");
      if (d.empty() || d.size() > 6)
        throw ConfigError("leakage.deltas", "expected 1 to 6 amplitudes (3 to 8 levels)");
      cfg.leak_deltas = std::move(d);
    }
    if (lk.contains("eps1")) cfg.eps1 = detail::positive_field(lk["eps1"], "leakage.eps1");
    if (lk.contains("eps2")) cfg.eps2 = detail::positive_field(lk["eps2"], "leakage.eps2");
  }
  if (doc.contains("encoded")) {
    const json& en = detail::object_at(doc["encoded"], "encoded");
    detail::reject_unknown(en, "encoded", {"b_field", "depth"});
    if (en.contains("b_field")) {
      cfg.b_field = detail::positive_field(en["b_field"], "encoded.b_field");
      if (!(cfg.b_field < 1.0))
        throw ConfigError("encoded.b_field", "must be below J = 1 so the singlet stays lowest");
    }
    if (en.contains("depth")) cfg.depth = detail::ranged_int(en["depth"], "encoded.depth", 0, 10000);
  }
  if (doc.contains("nonseparable")) {
    const json& ns = detail::object_at(doc["nonseparable"], "nonseparable");
    detail::reject_unknown(ns, "nonseparable", {"deltas"});
    if (ns.contains("deltas")) {
      auto d = detail::real_list(ns["deltas"], "nonseparable.deltas");
      if (d.size() < 2) throw ConfigError("nonseparable.deltas", "need at least two values");
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string path = "nonseparable.deltas[" + std::to_string(i) + "]";
        if (!(d[i] > 0.0)) throw ConfigError(path, "must be positive");
        if (i > 0 && !(d[i] < d[i - 1])) throw ConfigError(path, "must be strictly descending");
      }
      cfg.ring_deltas = std::move(d);
    }
  }
  return cfg;
}

}  // namespace dressed::harness
