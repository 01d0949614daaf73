// verify: runs the seeded dressed-qubit verification suites and writes a JSON report.
//
// Exit status: 0 when every case passes, 1 when any case fails, 2 on a usage or
// configuration error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dressed/harness/config.hpp"
#include "dressed/harness/report.hpp"
#include "dressed/harness/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dressed::harness::ConfigError("--config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = dressed::harness;

  CLI::App app{"Verify dressed-qubit equivalences on small Hilbert spaces"};
  std::optional<std::string> suite;
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> tol;
  std::optional<std::string> report_path;
  bool quiet = false;
  bool serial = false;

  app.add_option("--suite", suite, "all | su2 | leakage | exchange | encoded | nonseparable");
  app.add_option("--config", config_path, "JSON scenario file");
  app.add_option("--seed", seed, "RNG seed (unsigned 64-bit)");
  app.add_option("--trials", trials, "trials per property")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "override every upper-bound tolerance")->check(CLI::PositiveNumber);
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_flag("--quiet", quiet, "print only the summary line");
  app.add_flag("--serial", serial, "run cases one at a time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  h::ScenarioConfig cfg;
  try {
    if (config_path) cfg = h::parse_config(slurp(*config_path));
    if (suite) {
      if (!h::is_suite_selector(*suite)) throw h::ConfigError("--suite", "unknown suite " + *suite);
      cfg.suite = *suite;
    }
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const h::VerificationReport report = h::run_suite(cfg, {tol, !serial});

  if (!quiet) {
    for (const auto& c : report.cases) {
      std::printf("%s  %-40s residual=%.3e %s %.3e%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.residual, c.bound == h::Bound::upper ? "<" : ">", c.tolerance,
                  c.error ? (" error: " + *c.error).c_str() : "");
    }
  }
  std::printf("%s: %zu cases, %zu failed (suite=%s seed=%llu)\n", report.pass() ? "PASS" : "FAIL",
              report.cases.size(), report.failures(), report.suite.c_str(),
              static_cast<unsigned long long>(report.seed));

  if (report_path) {
    std::ofstream out(*report_path);
    if (!out) {
      std::cerr << "cannot write report to " << *report_path << "\n";
      return kExitConfig;
    }
    out << h::to_json(report).dump(2) << "\n";
  }
  return report.pass() ? kExitPass : kExitFail;
}
