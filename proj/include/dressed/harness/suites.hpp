#pragma once

// Seeded verification suites. Each case owns an RNG stream derived from
// (seed, case name), so cases are independent of each other and of run order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "dressed/encoded.hpp"
#include "dressed/exchange.hpp"
#include "dressed/harness/config.hpp"
#include "dressed/harness/report.hpp"
#include "dressed/leakage.hpp"
#include "dressed/nonseparable.hpp"
#include "dressed/sampling.hpp"
#include "dressed/su2.hpp"

namespace dressed::harness {

using sampling::Rng;

struct CaseDef {
  std::string name;
  Bound bound = Bound::upper;
  double tolerance = 0.0;
  nlohmann::json params = nlohmann::json::object();
  std::function<double(Rng&)> run;
};

namespace detail {

inline int scaled_trials(const ScenarioConfig& cfg, int num, int den) {
  return std::max(1, cfg.trials * num / den);
}

template <class F>
double max_over(int n, F&& f) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, f(i));
  return worst;
}

inline leakage::LeakageModel random_leakage(Rng& rng, int n_levels) {
  std::vector<cplx> deltas;
  const double scale = sampling::uniform(rng, 0.05, 1.5);
  for (int j = 2; j < n_levels; ++j) deltas.push_back(scale * sampling::complex_normal(rng));
  return {n_levels, sampling::uniform(rng, 0.5, 2.0), std::move(deltas)};
}

inline OperatorTriple pauli_triple() { return {spin::sx(), spin::sy(), spin::sz()}; }

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> su2_cases(const ScenarioConfig& cfg) {
  const int trials = cfg.trials;
  std::vector<CaseDef> out;
  auto identity_sweep = [trials](auto make_triple) {
    return [trials, make_triple](Rng& rng) {
      const OperatorTriple t = make_triple(rng);
      return detail::max_over(trials, [&](int) {
        return dressing_identity_residual(t, sampling::uniform(rng, -5.0, 5.0));
      });
    };
  };
  auto exchange_pair = [](Rng& rng) {
    return exchange::ExchangePair::two_spin(1.0, sampling::dm_vector(rng));
  };

  out.push_back({"su2.identity.pauli", Bound::upper, 1e-12, {{"trials", trials}},
                 identity_sweep([](Rng&) { return detail::pauli_triple(); })});
  for (int n : cfg.levels)
    out.push_back({"su2.identity.leakage_N" + std::to_string(n), Bound::upper, 1e-12,
                   {{"levels", n}, {"trials", trials}},
                   identity_sweep([n](Rng& rng) {
                     return leakage::leakage_triple(detail::random_leakage(rng, n));
                   })});
  out.push_back({"su2.identity.exchange_A", Bound::upper, 1e-12, {{"trials", trials}},
                 identity_sweep([=](Rng& rng) { return exchange::exchange_triples(exchange_pair(rng)).a; })});
  out.push_back({"su2.identity.exchange_B", Bound::upper, 1e-12, {{"trials", trials}},
                 identity_sweep([=](Rng& rng) { return exchange::exchange_triples(exchange_pair(rng)).b; })});

  // The exchange B triple breaks the third relation yet satisfies the identity above.
  out.push_back({"su2.third_relation.exchange_B", Bound::lower, 0.1, {{"trials", trials}},
                 [=](Rng& rng) {
                   double least = std::numeric_limits<double>::infinity();
                   for (int i = 0; i < trials; ++i)
                     least = std::min(least, exchange::exchange_triples(exchange_pair(rng)).b.r3());
                   return least;
                 }});
  out.push_back({"su2.corrupted_triple.r1", Bound::lower, 1e-12, {}, [](Rng&) {
                   const Operator jx = spin::sx(), jz = spin::sz();
                   try {
                     OperatorTriple bad(jx, jx, jz);
                   } catch (const InvalidTripleError&) {
                     return partial_su2_residuals(jx, jx, jz).r1;
                   }
                   return 0.0;  // accepted: treated as failure
                 }});
  out.push_back({"su2.phi_additivity", Bound::upper, 1e-12, {{"trials", trials}}, [=](Rng& rng) {
                   const OperatorTriple t = exchange::exchange_triples(exchange_pair(rng)).b;
                   return detail::max_over(trials, [&](int) {
                     const double phi = sampling::uniform(rng, -1.5, 1.5);
                     const Operator once = unitary_from_generator(t.jz(), -phi);
                     const Operator twice = unitary_from_generator(t.jz(), -2.0 * phi);
                     return op_distance(conjugate(once, conjugate(once, t.jx())), conjugate(twice, t.jx()));
                   });
                 }});
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> leakage_cases(const ScenarioConfig& cfg) {
  const int trials = cfg.trials;
  const int short_trials = detail::scaled_trials(cfg, 2, 5);
  std::vector<CaseDef> out;
  for (int n : cfg.levels) {
    const std::string tag = "N" + std::to_string(n);
    const nlohmann::json params{{"levels", n}, {"trials", trials}};
    out.push_back({"leakage.h1_dressing." + tag, Bound::upper, 1e-12, params, [=](Rng& rng) {
                     return detail::max_over(trials, [&](int) {
                       return leakage::verify_h1_dressing(detail::random_leakage(rng, n));
                     });
                   }});
    out.push_back({"leakage.isospectral." + tag, Bound::upper, 1e-12, params, [=](Rng& rng) {
                     return detail::max_over(trials, [&](int) {
                       const auto m = detail::random_leakage(rng, n);
                       return spectral_gap_distance(leakage::actual_h1(m), leakage::ideal_h1(m));
                     });
                   }});
    out.push_back({"leakage.matrix_elements." + tag, Bound::upper, 1e-12, params, [=](Rng& rng) {
                     auto qubit_state = [&] {
                       const auto ab = sampling::logical_amplitudes(rng);
                       CVector v = CVector::Zero(n);
                       v(0) = ab[0];
                       v(1) = ab[1];
                       return StateVector(Register{n}, v);
                     };
                     return detail::max_over(trials, [&](int) {
                       const auto m = detail::random_leakage(rng, n);
                       return leakage::matrix_element_gap(m, qubit_state(), qubit_state());
                     });
                   }});
    out.push_back({"leakage.level1_fixed." + tag, Bound::upper, 1e-14, params, [=](Rng& rng) {
                     return detail::max_over(trials, [&](int) {
                       const auto m = detail::random_leakage(rng, n);
                       const StateVector one = StateVector::basis(m.reg(), 1);
                       return (leakage::dressed(m, one) - one).norm();
                     });
                   }});
  }
  out.push_back({"leakage.phase_gate", Bound::upper, 1e-12, {{"trials", short_trials}},
                 [=](Rng& rng) {
                   std::uniform_int_distribution<int> small(1, 9);
                   return detail::max_over(short_trials, [&](int) {
                     const double unit = sampling::uniform(rng, 0.5, 2.0);
                     const double e1 = small(rng) * unit, e2 = small(rng) * unit;
                     return leakage::phase_gate_check(
                                leakage::LeakageModel(3, 1.0, {cplx(0.3)}, e1, e2))
                         .residual;
                   });
                 }});
  const std::vector<int> levels = cfg.levels;
  out.push_back({"leakage.ising", Bound::upper, 1e-13, {{"trials", short_trials}},
                 [=](Rng& rng) {
                   std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
                   return detail::max_over(short_trials, [&](int) {
                     const auto mk = detail::random_leakage(rng, levels[pick(rng)]);
                     const auto ml = detail::random_leakage(rng, levels[pick(rng)]);
                     return leakage::ising_invariance(mk, ml);
                   });
                 }});
  if (cfg.leak_deltas) {
    const auto& d = *cfg.leak_deltas;
    std::vector<cplx> deltas(d.begin(), d.end());
    const leakage::LeakageModel m(static_cast<int>(d.size()) + 2, cfg.f, deltas, cfg.eps1, cfg.eps2);
    out.push_back({"leakage.fixed_model", Bound::upper, 1e-12,
                   {{"levels", m.n_levels()}, {"f", cfg.f}, {"deltas", d}, {"eps1", cfg.eps1},
                    {"eps2", cfg.eps2}},
                   [m](Rng&) {
                     return std::max(leakage::verify_h1_dressing(m), leakage::phase_gate_check(m).residual);
                   }});
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> exchange_cases(const ScenarioConfig& cfg) {
  const int trials = detail::scaled_trials(cfg, 2, 1);
  const double j = cfg.j;
  std::vector<CaseDef> out;
  const nlohmann::json params{{"trials", trials}, {"J", j}, {"dm_range", {0.01, 0.8}}};
  auto pair = [j](Rng& rng) { return exchange::ExchangePair::two_spin(j, sampling::dm_vector(rng)); };

  using Pick = double (*)(const exchange::ExchangeResiduals&);
  const std::pair<const char*, Pick> forms[] = {
      {"exchange.dressing.W", [](const exchange::ExchangeResiduals& r) { return r.r_w; }},
      {"exchange.dressing.V_l", [](const exchange::ExchangeResiduals& r) { return r.r_vl; }},
      {"exchange.dressing.V_k", [](const exchange::ExchangeResiduals& r) { return r.r_vk; }},
  };
  for (const auto& [name, pick] : forms)
    out.push_back({name, Bound::upper, 1e-12, params, [=](Rng& rng) {
                     return detail::max_over(trials, [&](int) {
                       return pick(exchange::verify_exchange_dressing(pair(rng)));
                     });
                   }});
  out.push_back({"exchange.isospectral", Bound::upper, 1e-12, params, [=](Rng& rng) {
                   return detail::max_over(trials, [&](int) {
                     const auto p = pair(rng);
                     return spectral_gap_distance(exchange::actual_hkl(p), exchange::ideal_hkl(p));
                   });
                 }});
  // |gamma - 1/2| / |D| must stay below 1 for |D| < 0.1.
  out.push_back({"exchange.gamma_taylor", Bound::upper, 1.0, {{"trials", trials}, {"dm_range", {1e-4, 0.1}}},
                 [=](Rng& rng) {
                   return detail::max_over(trials, [&](int) {
                     const auto dm = sampling::dm_vector(rng, 1e-4, 0.1);
                     return std::abs(dm.gamma() - 0.5) / dm.d_abs();
                   });
                 }});
  out.push_back({"exchange.gamma_fit", Bound::upper, 1e-12, {{"d_abs", 0.8}}, [j](Rng& rng) {
                   const auto dm = exchange::DMVector(scale3(sampling::unit_vector(rng), 0.8));
                   const auto p = exchange::ExchangePair::two_spin(j, dm);
                   return std::abs(dm.gamma() - exchange::fitted_gamma(p));
                 }});
  out.push_back({"exchange.v_forms_commute", Bound::upper, 1e-13, params, [=](Rng& rng) {
                   return detail::max_over(trials, [&](int) {
                     const auto p = pair(rng);
                     const Operator total = spin::along(p.dm().n(), 0, p.reg()) + spin::along(p.dm().n(), 1, p.reg());
                     const Operator rot = unitary_from_generator(total, -p.dm().epsilon());
                     return commutator(exchange::ideal_hkl(p), rot).frobenius_norm();
                   });
                 }});
  out.push_back({"exchange.matrix_elements", Bound::upper, 1e-12, params, [=](Rng& rng) {
                   return detail::max_over(trials, [&](int) {
                     const auto p = pair(rng);
                     const Operator wdag = exchange::w_dressing(p).unitary.adjoint();
                     const StateVector psi = sampling::random_state(rng, p.reg());
                     const StateVector phi = sampling::random_state(rng, p.reg());
                     const cplx a = matrix_element(wdag * psi, exchange::actual_hkl(p), wdag * phi);
                     const cplx b = matrix_element(psi, exchange::ideal_hkl(p), phi);
                     return std::abs(a - b);
                   });
                 }});
  if (cfg.dm) {
    const auto dm = *cfg.dm;
    out.push_back({"exchange.fixed_dm", Bound::upper, 1e-12,
                   {{"dm", {dm.d()[0], dm.d()[1], dm.d()[2]}}, {"J", j}}, [dm, j](Rng&) {
                     const auto r = exchange::verify_exchange_dressing(exchange::ExchangePair::two_spin(j, dm));
                     return std::max({r.r_w, r.r_vl, r.r_vk});
                   }});
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> encoded_cases(const ScenarioConfig& cfg) {
  using namespace encoded;
  const int trials = cfg.trials;
  const int short_trials = detail::scaled_trials(cfg, 2, 5);
  const int depth = cfg.depth;
  const double b_field = cfg.b_field;
  std::vector<CaseDef> out;

  for (const auto& [k, l] : allowed_pairs(2)) {
    const std::string name = "encoded.gate.(" + std::to_string(k) + "," + std::to_string(l) + ")";
    out.push_back({name, Bound::upper, 1e-12, {{"pair", {k, l}}, {"trials", trials}},
                   [k = k, l = l, trials](Rng& rng) {
                     return detail::max_over(trials, [&](int) {
                       const GateSpec g{k, l, sampling::uniform(rng, -kPi, kPi), Basis::actual};
                       const auto dm = sampling::dm_vector(rng);
                       return verify_gate_equivalence(g, dm, rng());
                     });
                   }});
  }
  out.push_back({"encoded.circuit.depth" + std::to_string(depth), Bound::upper, 1e-10,
                 {{"blocks", 2}, {"depth", depth}, {"trials", trials}}, [=](Rng& rng) {
                   return detail::max_over(trials, [&](int) {
                     const auto dm = sampling::dm_vector(rng);
                     return simulate_circuit(random_circuit(rng, 2, depth), dm).equivalence_residual;
                   });
                 }});
  out.push_back({"encoded.swap_angle", Bound::upper, 1e-12, {{"expected", "pi"}},
                 [](Rng&) { return std::abs(swap_angle() - kPi); }});
  out.push_back({"encoded.swap_relocation.(3,4,5)", Bound::upper, 1e-12, {{"trials", short_trials}},
                 [=](Rng& rng) {
                   const Register reg = chain_register(2);
                   return detail::max_over(short_trials, [&](int) {
                     return swap_relocation_residual(sampling::uniform(rng, -kPi, kPi), 3, 4, 5, reg);
                   });
                 }});
  out.push_back({"encoded.relocate_u34_u15", Bound::upper, 1e-12, {{"trials", short_trials}},
                 [=](Rng& rng) {
                   return detail::max_over(short_trials, [&](int) {
                     return relocate_u34_to_u15_residual(sampling::uniform(rng, -kPi, kPi));
                   });
                 }});
  out.push_back({"encoded.prepare.overlap", Bound::upper, 1e-10,
                 {{"trials", short_trials}, {"b_field", b_field}}, [=](Rng& rng) {
                   return detail::max_over(short_trials, [&](int) {
                     const auto prep = prepare_logical_zero(sampling::dm_vector(rng), b_field);
                     return prep.degenerate ? 1.0 : 1.0 - prep.overlap;
                   });
                 }});
  out.push_back({"encoded.measure.roundtrip", Bound::upper, 1e-9,
                 {{"trials", short_trials}, {"b_field", b_field}}, [=](Rng& rng) {
                   return detail::max_over(short_trials, [&](int) {
                     const auto dm = sampling::dm_vector(rng);
                     const auto prep = prepare_logical_zero(dm, b_field);
                     return 1.0 - singlet_measurement_probability(prep.state, dm);
                   });
                 }});
  out.push_back({"encoded.measure.dressed_one", Bound::upper, 1e-12, {{"trials", short_trials}},
                 [=](Rng& rng) {
                   return detail::max_over(short_trials, [&](int) {
                     const auto dm = sampling::dm_vector(rng);
                     const EncodedBlock block{1, sampling::unit_vector(rng)};
                     return singlet_measurement_probability(dressed_state(0.0, 1.0, dm, block), dm);
                   });
                 }});
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> nonseparable_cases(const ScenarioConfig& cfg) {
  using namespace nonseparable;
  std::vector<CaseDef> out;
  const std::vector<double> deltas = cfg.ring_deltas;
  for (int n : cfg.ring_sizes) {
    const std::string tag = "N" + std::to_string(n);
    // log10 of the residual ratio between the first two deltas, against the
    // quadratic prediction; a decade step gives ratio in [80, 125].
    out.push_back({"nonseparable.scaling." + tag, Bound::upper, std::log10(1.25),
                   {{"ring", n}, {"deltas", {deltas[0], deltas[1]}}}, [=](Rng&) {
                     const auto r = residual_scaling(RingModel(n, 0.0), 0, {deltas[0], deltas[1]});
                     return std::abs(std::log10(r[0] / r[1]) - 2.0 * std::log10(deltas[0] / deltas[1]));
                   }});
    out.push_back({"nonseparable.exponent." + tag, Bound::upper, 0.1, {{"ring", n}, {"deltas", deltas}},
                   [=](Rng&) {
                     const RingModel m(n, 0.0);
                     return std::abs(scaling_exponent(deltas, residual_scaling(m, 0, deltas)) - 2.0);
                   }});
    out.push_back({"nonseparable.slope_at_zero." + tag, Bound::upper, 1e-6, {{"ring", n}, {"step", 1e-4}},
                   [=](Rng&) { return std::abs(residual_slope_at_zero(RingModel(n, 0.0), 0)); }});
    out.push_back({"nonseparable.zz_invariance." + tag, Bound::upper, 1e-14, {{"ring", n}},
                   [=](Rng& rng) {
                     const RingModel m(n, sampling::uniform(rng, -0.5, 0.5));
                     const Register reg = m.reg();
                     const Operator u = nonlocal_dressing(m);
                     double worst = 0.0;
                     for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
                       const Operator zk = spin::at(2, k, reg);
                       worst = std::max(worst, op_distance(conjugate(u, zk), zk));
                       for (std::size_t l = k + 1; l < static_cast<std::size_t>(n); ++l) {
                         const Operator zz = zk * spin::at(2, l, reg);
                         worst = std::max(worst, op_distance(conjugate(u, zz), zz));
                       }
                     }
                     return worst;
                   }});
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CaseDef> suite_cases(const std::string& suite, const ScenarioConfig& cfg) {
  if (suite == "su2") return su2_cases(cfg);
  if (suite == "leakage") return leakage_cases(cfg);
  if (suite == "exchange") return exchange_cases(cfg);
  if (suite == "encoded") return encoded_cases(cfg);
  if (suite == "nonseparable") return nonseparable_cases(cfg);
  throw std::invalid_argument("unknown suite " + suite);
}

/// Convention choices resolved at run time, echoed in every report.
inline nlohmann::json conventions() {
  return {{"spin_normalization", "S = sigma/2"},
          {"exchange_epsilon_sign", exchange::epsilon_sign()},
          {"ring_dressing_orientation", nonseparable::dressing_orientation()},
          {"swap_angle", encoded::swap_angle()},
          {"leakage_orientation", "H1 = D H1_ideal D^dag, dressed = D ideal"}};
}

struct RunOptions {
  std::optional<double> tolerance_override;  // applies to every upper-bound case
  bool parallel = true;
};

inline CaseRecord run_case(const CaseDef& def, std::uint64_t seed) {
  CaseRecord rec;
  rec.name = def.name;
  rec.tolerance = def.tolerance;
  rec.bound = def.bound;
  rec.params = def.params;
  Rng rng = sampling::stream(seed, def.name);
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.residual = def.run(rng);
    rec.pass = judge(rec.residual, rec.tolerance, rec.bound);
  } catch (const std::exception& e) {
    rec.residual = 0.0;
    rec.pass = false;
    rec.error = e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Runs every case of the selected suites. Deterministic in (cfg, artifact version)
/// apart from wall_time.
inline VerificationReport run_suite(const ScenarioConfig& cfg, const RunOptions& opts = {}) {
  std::vector<CaseDef> defs;
  for (const auto& suite : cfg.selected_suites()) {
    auto cases = suite_cases(suite, cfg);
    const auto over = cfg.tolerances.find(suite);
    for (auto& c : cases) {
      if (c.bound != Bound::upper) continue;
      if (over != cfg.tolerances.end()) c.tolerance = over->second;
      if (opts.tolerance_override) c.tolerance = *opts.tolerance_override;
    }
    defs.insert(defs.end(), std::make_move_iterator(cases.begin()), std::make_move_iterator(cases.end()));
  }

  VerificationReport report;
  report.suite = cfg.suite;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.conventions = conventions();

  if (opts.parallel) {
    std::vector<std::future<CaseRecord>> futures;
    futures.reserve(defs.size());
    for (const auto& d : defs)
      futures.push_back(std::async(std::launch::async, [&d, seed = cfg.seed] { return run_case(d, seed); }));
    for (auto& f : futures) report.cases.push_back(f.get());
  } else {
    for (const auto& d : defs) report.cases.push_back(run_case(d, cfg.seed));
  }
  std::sort(report.cases.begin(), report.cases.end(),
            [](const CaseRecord& a, const CaseRecord& b) { return a.name < b.name; });
  return report;
}

}  // namespace dressed::harness
