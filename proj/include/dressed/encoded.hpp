#pragma once

// Three-spin encoded qubits driven by anisotropic exchange.
//
// Block l occupies spins 3l-2, 3l-1, 3l (1-based labels, as used for gate pairs).
// The dressed logical state of a block is
//
//   |Phi>_l = V_{3l-2,3l}^dag |Phi_ideal>_l,   V_{ac} = W_{ac}^2 = e^{-i eps n.(S_a - S_c)}.
//
// Actual exchange gates U_kl(theta) = exp(-i theta H_kl) act on dressed states exactly
// as exp(-i theta H_kl_ideal) acts on ideal states, for every intra-block pair and
// for the inter-block pairs (3l-2, 3l+2), (3l-1, 3l+3) of the row geometry.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dressed/exchange.hpp"
#include "dressed/sampling.hpp"
#include "dressed/tensor.hpp"

namespace dressed::encoded {

using exchange::DMVector;

inline Register block_register() { return Register{2, 2, 2}; }

/// n_blocks consecutive 3-spin blocks.
inline Register chain_register(int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("chain needs at least one block");
  return Register::uniform(3 * n_blocks, 2);
}

struct EncodedBlock {
  int index = 1;                // l >= 1
  Vec3 axis{0.0, 0.0, 1.0};     // quantization axis of the logical basis

  /// 0-based register indices of spins 3l-2, 3l-1, 3l.
  std::array<std::size_t, 3> sites() const {
    if (index < 1) throw std::invalid_argument("block index must be >= 1");
    const auto first = static_cast<std::size_t>(3 * index - 3);
    return {first, first + 1, first + 2};
  }
  void check_within(const Register& reg) const {
    if (sites()[2] >= reg.sites()) throw DimensionError("block lies outside the register");
  }
};

/// e^{-i beta m.S_total}, the global rotation taking z to `n`.
inline Operator rotation_to_axis(const Vec3& n, const Register& reg) {
  const double len = norm3(n);
  if (!(len > 0.0)) throw std::invalid_argument("axis must be non-zero");
  const Vec3 u = scale3(n, 1.0 / len);
  Vec3 m = cross3(Vec3{0.0, 0.0, 1.0}, u);
  const double s = norm3(m);
  const double beta = std::atan2(s, u[2]);
  if (s < 1e-15) {
    if (u[2] > 0.0) return Operator::identity(reg);
    m = {1.0, 0.0, 0.0};
  } else {
    m = scale3(m, 1.0 / s);
  }
  Operator gen = Operator::zero(reg);
  for (std::size_t site = 0; site < reg.sites(); ++site) gen += spin::along(m, site, reg);
  return unitary_from_generator(gen, beta);
}

struct LogicalBasis {
  StateVector zero;
  StateVector one;
};

/// |0_L> = |s>_12 |up>_3,  |1_L> = sqrt(2/3)|up up down> - sqrt(1/3)|t>_12 |up>_3,
/// quantized along block.axis. Block-local register.
inline LogicalBasis logical_basis(const EncodedBlock& block) {
  const Register reg = block_register();
  // Index 4*s1 + 2*s2 + s3 with up = 0, down = 1.
  CVector zero = CVector::Zero(8), one = CVector::Zero(8);
  const double r2 = 1.0 / std::sqrt(2.0);
  zero(2) = r2;
  zero(4) = -r2;
  one(1) = std::sqrt(2.0 / 3.0);
  one(2) = -1.0 / std::sqrt(6.0);
  one(4) = -1.0 / std::sqrt(6.0);
  const Operator r = rotation_to_axis(block.axis, reg);
  return {r * StateVector(reg, zero), r * StateVector(reg, one)};
}

inline StateVector logical_state(cplx a, cplx b, const EncodedBlock& block) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
    throw std::invalid_argument("logical amplitudes must satisfy |a|^2 + |b|^2 = 1");
  const LogicalBasis basis = logical_basis(block);
  return a * basis.zero + b * basis.one;
}

/// V_{3l-2,3l} on `reg`: e^{-i eps n.S_{3l-2}} e^{+i eps n.S_{3l}}.
inline Operator block_dressing(const DMVector& dm, const EncodedBlock& block, const Register& reg) {
  block.check_within(reg);
  const auto s = block.sites();
  const Operator first = exchange::v_dressing(dm, s[0], reg).unitary;
  const Operator last = exchange::v_dressing(dm, s[2], reg).unitary;
  return first.adjoint() * last;
}

/// Block dressing on the block's own 3-spin register.
inline Operator block_dressing(const DMVector& dm) {
  return block_dressing(dm, EncodedBlock{}, block_register());
}

/// Product of all block dressings on chain_register(n_blocks).
inline Operator chain_dressing(const DMVector& dm, int n_blocks) {
  const Operator local = block_dressing(dm);
  Operator out = local;
  for (int b = 1; b < n_blocks; ++b) out = kron(out, local);
  return out;
}

/// V^dag (a |0_L> + b |1_L>) on the block register.
inline StateVector dressed_state(cplx a, cplx b, const DMVector& dm, const EncodedBlock& block) {
  return block_dressing(dm).adjoint() * logical_state(a, b, block);
}

// ---------------------------------------------------------------------------
// Gates

enum class Basis { actual, ideal };

/// `theta` is the angle in the frame named by `basis`: U_kl(theta) = exp(-i theta H_kl)
/// for actual, U_kl_ideal(theta) = exp(-i theta S_k.S_l) for ideal.
struct GateSpec {
  int k = 1;  // 1-based spin labels, k < l
  int l = 2;
  double theta = 0.0;
  Basis basis = Basis::actual;
};

/// Intra-block pairs plus the row-geometry neighbours (3l-2, 3l+2), (3l-1, 3l+3).
inline std::vector<std::pair<int, int>> allowed_pairs(int n_blocks) {
  std::vector<std::pair<int, int>> out;
  for (int b = 1; b <= n_blocks; ++b) {
    out.emplace_back(3 * b - 2, 3 * b - 1);
    out.emplace_back(3 * b - 1, 3 * b);
  }
  for (int b = 1; b < n_blocks; ++b) {
    out.emplace_back(3 * b - 2, 3 * b + 2);
    out.emplace_back(3 * b - 1, 3 * b + 3);
  }
  return out;
}

inline bool is_allowed(int k, int l, int n_blocks) {
  const auto pairs = allowed_pairs(n_blocks);
  return std::find(pairs.begin(), pairs.end(), std::pair{k, l}) != pairs.end();
}

/// Smallest number of blocks containing both spins of the pair.
inline int blocks_spanned(int k, int l) { return (std::max(k, l) + 2) / 3; }

inline int blocks_of(const Register& reg) {
  if (reg.sites() % 3 != 0) throw DimensionError("spin chain length is not a multiple of 3");
  for (int d : reg.dims())
    if (d != 2) throw DimensionError("spin chain must consist of spin-1/2 sites");
  return static_cast<int>(reg.sites() / 3);
}

namespace detail {

inline Operator local_actual(const DMVector& dm) {
  return exchange::actual_hkl(exchange::ExchangePair::two_spin(1.0, dm));
}
inline Operator local_dot() { return spin::dot(0, 1, Register{2, 2}); }

inline Operator place(const Operator& local2, int k, int l, const Register& reg) {
  const std::array<std::size_t, 2> sites{static_cast<std::size_t>(k - 1),
                                         static_cast<std::size_t>(l - 1)};
  return embed(local2, sites, reg);
}

}  // namespace detail

/// exp(-i theta H_kl) (actual, J = 1) or exp(-i theta S_k.S_l) (ideal) on `reg`.
inline Operator gate_unitary(const GateSpec& g, const DMVector& dm, const Register& reg) {
  if (!is_allowed(g.k, g.l, blocks_of(reg)))
    throw std::invalid_argument("gate pair (" + std::to_string(g.k) + "," + std::to_string(g.l) +
                                ") is not in the allowed set");
  const Operator gen = g.basis == Basis::actual ? detail::local_actual(dm) : detail::local_dot();
  return detail::place(unitary_from_generator(gen, g.theta), g.k, g.l, reg);
}

/// Bare ideal exchange exp(-i theta S_k.S_l) for any distinct pair (no allowed-set check).
inline Operator ideal_exchange(double theta, int k, int l, const Register& reg) {
  if (k == l) throw std::invalid_argument("exchange needs distinct spins");
  return detail::place(unitary_from_generator(detail::local_dot(), theta), k, l, reg);
}

struct AnglePair {
  double actual;  // angle for exp(-i theta H_kl)
  double ideal;   // matching angle for exp(-i theta S_k.S_l)
};

/// exp(-i t H_kl) pairs with exp(-i t H_ideal) = exp(-i t sqrt(1+|D|^2) S_k.S_l).
inline AnglePair matched_angles(const GateSpec& g, const DMVector& dm) {
  if (g.basis == Basis::actual) return {g.theta, g.theta * dm.scale()};
  return {g.theta / dm.scale(), g.theta};
}

/// Product of per-block logical states on chain_register(blocks.size()).
inline StateVector product_logical_state(std::span<const std::array<cplx, 2>> amps,
                                         std::span<const EncodedBlock> blocks) {
  if (amps.empty() || amps.size() != blocks.size())
    throw std::invalid_argument("need one amplitude pair per block");
  StateVector out = logical_state(amps[0][0], amps[0][1], blocks[0]);
  for (std::size_t b = 1; b < amps.size(); ++b)
    out = kron(out, logical_state(amps[b][0], amps[b][1], blocks[b]));
  return out;
}

/// max |<Psi|U_actual|Phi> - <Psi_id|U_ideal|Phi_id>| over seeded random logical probe
/// pairs on the smallest chain containing the gate.
inline double verify_gate_equivalence(const GateSpec& g, const DMVector& dm,
                                      std::uint64_t seed = 0, int probes = 8) {
  const int nb = blocks_spanned(g.k, g.l);
  if (!is_allowed(g.k, g.l, nb))
    throw std::invalid_argument("gate pair is not in the allowed set");
  const Register reg = chain_register(nb);
  const AnglePair ang = matched_angles(g, dm);
  const Operator u_act = gate_unitary({g.k, g.l, ang.actual, Basis::actual}, dm, reg);
  const Operator u_id = gate_unitary({g.k, g.l, ang.ideal, Basis::ideal}, dm, reg);
  const Operator vdag = chain_dressing(dm, nb).adjoint();

  auto rng = sampling::stream(seed, "verify_gate_equivalence");
  auto draw = [&] {
    std::vector<std::array<cplx, 2>> amps;
    std::vector<EncodedBlock> blocks;
    for (int b = 1; b <= nb; ++b) {
      amps.push_back(sampling::logical_amplitudes(rng));
      blocks.push_back({b, sampling::unit_vector(rng)});
    }
    return product_logical_state(amps, blocks);
  };

  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const StateVector psi_id = draw();
    const StateVector phi_id = draw();
    const cplx dressed_elem = matrix_element(vdag * psi_id, u_act, vdag * phi_id);
    const cplx ideal_elem = matrix_element(psi_id, u_id, phi_id);
    worst = std::max(worst, std::abs(dressed_elem - ideal_elem));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Circuits

struct CircuitSpec {
  std::vector<GateSpec> gates;
  std::vector<std::array<cplx, 2>> inputs;  // one (a, b) per block, z-quantized
};

struct CircuitResult {
  StateVector dressed_out;
  StateVector ideal_out;
  double equivalence_residual;
};

/// Runs the gates on dressed inputs with the actual Hamiltonian and on ideal inputs
/// with the ideal one; residual = || dressed_out - V^dag ideal_out ||.
inline CircuitResult simulate_circuit(const CircuitSpec& c, const DMVector& dm) {
  if (c.inputs.empty()) throw std::invalid_argument("circuit needs at least one block input");
  const int nb = static_cast<int>(c.inputs.size());
  for (const GateSpec& g : c.gates) {
    if (g.basis != c.gates.front().basis)
      throw std::invalid_argument("circuit mixes actual and ideal basis flags");
    if (!is_allowed(g.k, g.l, nb))
      throw std::invalid_argument("circuit gate pair (" + std::to_string(g.k) + "," +
                                  std::to_string(g.l) + ") is not allowed on " +
                                  std::to_string(nb) + " blocks");
  }
  const Register reg = chain_register(nb);
  std::vector<EncodedBlock> blocks;
  for (int b = 1; b <= nb; ++b) blocks.push_back({b, {0.0, 0.0, 1.0}});

  const Operator vdag = chain_dressing(dm, nb).adjoint();
  StateVector ideal = product_logical_state(c.inputs, blocks);
  StateVector dressed = vdag * ideal;
  for (const GateSpec& g : c.gates) {
    const AnglePair ang = matched_angles(g, dm);
    dressed = gate_unitary({g.k, g.l, ang.actual, Basis::actual}, dm, reg) * dressed;
    ideal = gate_unitary({g.k, g.l, ang.ideal, Basis::ideal}, dm, reg) * ideal;
  }
  const double residual = (dressed - vdag * ideal).norm();
  return {std::move(dressed), std::move(ideal), residual};
}

/// Seeded random circuit of `depth` gates drawn from the allowed set.
inline CircuitSpec random_circuit(sampling::Rng& rng, int n_blocks, int depth,
                                  Basis basis = Basis::actual) {
  const auto pairs = allowed_pairs(n_blocks);
  CircuitSpec c;
  for (int b = 0; b < n_blocks; ++b) c.inputs.push_back(sampling::logical_amplitudes(rng));
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  for (int i = 0; i < depth; ++i) {
    const auto& [k, l] = pairs[pick(rng)];
    c.gates.push_back({k, l, sampling::uniform(rng, -kPi, kPi), basis});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Swap relocation

/// op_distance(U_kl(ts)^dag U_lm(theta) U_kl(ts), U_km(theta)), all bare ideal exchanges.
inline double relocation_residual_at(double theta_swap, double theta, int k, int l, int m,
                                     const Register& reg) {
  if (k == l || l == m || k == m) throw std::invalid_argument("relocation needs distinct spins");
  const Operator s = ideal_exchange(theta_swap, k, l, reg);
  const Operator moved = s.adjoint() * ideal_exchange(theta, l, m, reg) * s;
  return op_distance(moved, ideal_exchange(theta, k, m, reg));
}

/// Swap angle for S = sigma/2, found by a grid scan plus golden-section refinement
/// of the relocation residual over [0, 2 pi).
inline double swap_angle() {
  static const double angle = [] {
    const Register reg = Register::uniform(3, 2);
    const double probe_theta = 1.3;
    auto f = [&](double ts) { return relocation_residual_at(ts, probe_theta, 1, 2, 3, reg); };

    constexpr int grid = 720;
    const double h = 2.0 * kPi / grid;
    int best = 0;
    double best_val = f(0.0);
    for (int i = 1; i < grid; ++i) {
      const double v = f(i * h);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    double lo = (best - 1) * h, hi = (best + 1) * h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
    return 0.5 * (lo + hi);
  }();
  return angle;
}

inline double swap_relocation_residual(double theta, int k, int l, int m, const Register& reg) {
  return relocation_residual_at(swap_angle(), theta, k, l, m, reg);
}

/// Moves U_34 to U_14 (swap 1,3) and then to U_15 (swap 5,4) on two blocks.
inline double relocate_u34_to_u15_residual(double theta) {
  const Register reg = chain_register(2);
  const double ts = swap_angle();
  const Operator s13 = ideal_exchange(ts, 1, 3, reg);
  const Operator s54 = ideal_exchange(ts, 5, 4, reg);
  const Operator moved =
      s54.adjoint() * s13.adjoint() * ideal_exchange(theta, 3, 4, reg) * s13 * s54;
  return op_distance(moved, ideal_exchange(theta, 1, 5, reg));
}

// ---------------------------------------------------------------------------
// Preparation and measurement

struct Preparation {
  StateVector state;
  double energy;
  double overlap;  // |<ground|dressed |0_L>>|
  bool degenerate;
};

/// Ground state of H_12 - B n.S_3 (J = 1, n = D/|D|) on one block.
inline Preparation prepare_logical_zero(const DMVector& dm, double b_field,
                                        double degeneracy_tol = kDegeneracyTol) {
  if (b_field < 0.0 || !(b_field < dm.scale()))
    throw std::invalid_argument("preparation field must satisfy 0 <= B < J sqrt(1+|D|^2)");
  const Register reg = block_register();
  const exchange::ExchangePair p12(1.0, dm, 0, 1, reg);
  const Operator h = exchange::actual_hkl(p12) - b_field * spin::along(dm.n(), 2, reg);
  GroundState gs = ground_state(h, degeneracy_tol);
  const StateVector target = dressed_state(1.0, 0.0, dm, EncodedBlock{1, dm.n()});
  const double overlap = std::abs(inner(gs.state, target));
  return {std::move(gs.state), gs.energy, overlap, gs.degenerate};
}

/// Weight of `state` in the eigenspace of actual H_12 at the dressed-singlet energy
/// -(3/4) sqrt(1+|D|^2).
inline double singlet_measurement_probability(const StateVector& state, const DMVector& dm) {
  const Register reg = block_register();
  require_same_register(state.reg(), reg, "singlet_measurement_probability");
  const Eigensystem es =
      hermitian_eigensystem(exchange::actual_hkl(exchange::ExchangePair(1.0, dm, 0, 1, reg)));
  const double singlet = -0.75 * dm.scale();
  double p = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (std::abs(es.values(i) - singlet) < kDegeneracyTol)
      p += std::norm(es.vectors.col(i).dot(state.amplitudes()));
  return p;
}

/// V^dag (|s><s|_12 x I_3) V, the same measurement expressed through the dressing.
inline Operator dressed_singlet_projector(const DMVector& dm) {
  const Register reg = block_register();
  CVector s = CVector::Zero(4);
  s(1) = 1.0 / std::sqrt(2.0);
  s(2) = -1.0 / std::sqrt(2.0);
  const Operator proj = embed(Operator(Register{2, 2}, s * s.adjoint()), {0, 1}, reg);
  const Operator v = block_dressing(dm);
  return v.adjoint() * proj * v;
}

}  // namespace dressed::encoded
