#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dressed::harness {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// How a residual is judged against its tolerance.
enum class Bound {
  upper,  // pass iff residual < tolerance
  lower,  // pass iff residual > tolerance
};

inline const char* to_string(Bound b) { return b == Bound::upper ? "upper" : "lower"; }

struct CaseRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::upper;
  bool pass = false;
  nlohmann::json params = nlohmann::json::object();
  double wall_time = 0.0;  // seconds
  std::optional<std::string> error;
};

inline bool judge(double residual, double tolerance, Bound bound) {
  if (!std::isfinite(residual) || residual < 0.0) return false;
  return bound == Bound::upper ? residual < tolerance : residual > tolerance;
}

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CaseRecord> cases;  // sorted by name
  nlohmann::json conventions = nlohmann::json::object();

  bool pass() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.pass ? 0 : 1;
    return n;
  }
  const CaseRecord* find(const std::string& name) const {
    for (const auto& c : cases)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline nlohmann::json to_json(const CaseRecord& c, bool with_timing = true) {
  nlohmann::json j{{"name", c.name},           {"residual", c.residual},
                   {"tolerance", c.tolerance}, {"bound", to_string(c.bound)},
                   {"pass", c.pass},           {"params", c.params}};
  if (with_timing) j["wall_time"] = c.wall_time;
  if (c.error) j["error"] = *c.error;
  return j;
}

/// Report document; `with_timing = false` gives the deterministic part only.
inline nlohmann::json to_json(const VerificationReport& r, bool with_timing = true) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c, with_timing));
  return {{"schema_version", kSchemaVersion},
          {"artifact_version", kArtifactVersion},
          {"suite", r.suite},
          {"seed", r.seed},
          {"trials", r.trials},
          {"conventions", r.conventions},
          {"cases", std::move(cases)},
          {"pass", r.pass()}};
}

}  // namespace dressed::harness
