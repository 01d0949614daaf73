#pragma once

// Qubit embedded in an N-level system with leakage from level 1.
//
//   H1        = f [ |0><1| + sum_{j>=2} delta_j |1><j| + h.c. ] = f (X + kappa Y)
//   H1_ideal  = f sqrt(1 + kappa^2) X
//   H2        = eps1 n1 + eps2 n2
//
// with kappa = sqrt(sum |delta_j|^2). The dressing D = e^{-i phi Z}, phi = atan(kappa),
// satisfies H1 = D H1_ideal D^dagger; dressed states are D|psi_ideal>. D only mixes
// level 0 with levels j >= 2, so level 1 is never dressed.

#include <cmath>
#include <string>
#include <vector>

#include "dressed/su2.hpp"
#include "dressed/tensor.hpp"

namespace dressed::leakage {

class LeakageModel {
public:
  LeakageModel(int n_levels, double f, std::vector<cplx> deltas, double eps1 = 1.0,
               double eps2 = 2.0)
      : n_(n_levels), f_(f), deltas_(std::move(deltas)), eps1_(eps1), eps2_(eps2) {
    if (n_ < 3) throw std::invalid_argument("leakage model needs at least 3 levels");
    if (deltas_.size() != static_cast<std::size_t>(n_ - 2))
      throw std::invalid_argument("leakage model with " + std::to_string(n_) + " levels needs " +
                                  std::to_string(n_ - 2) + " leakage amplitudes");
    if (!(eps1_ > 0.0) || !(eps2_ > 0.0))
      throw std::invalid_argument("level energies eps1, eps2 must be positive");
    double k2 = 0.0;
    for (const cplx& d : deltas_) k2 += std::norm(d);
    kappa_ = std::sqrt(k2);
  }

  /// Three-level model with a single real leakage amplitude.
  static LeakageModel three_level(double f, double delta, double eps1 = 1.0, double eps2 = 2.0) {
    return {3, f, {cplx(delta)}, eps1, eps2};
  }

  int n_levels() const noexcept { return n_; }
  double f() const noexcept { return f_; }
  const std::vector<cplx>& deltas() const noexcept { return deltas_; }
  double eps1() const noexcept { return eps1_; }
  double eps2() const noexcept { return eps2_; }
  double kappa_abs() const noexcept { return kappa_; }
  double phi() const noexcept { return std::atan(kappa_); }
  Register reg() const { return Register{n_}; }

private:
  int n_;
  double f_;
  std::vector<cplx> deltas_;
  double eps1_, eps2_;
  double kappa_ = 0.0;
};

/// |k><l| on a single n-level site.
inline Operator ladder(int n_levels, int k, int l) {
  if (n_levels < 2 || k < 0 || l < 0 || k >= n_levels || l >= n_levels)
    throw std::out_of_range("ladder: level index out of range");
  CMatrix m = CMatrix::Zero(n_levels, n_levels);
  m(k, l) = 1.0;
  return {Register{n_levels}, m};
}

inline Operator number_op(int n_levels, int k) { return ladder(n_levels, k, k); }

/// |0><1| + |1><0|
inline Operator x_op(int n_levels) { return ladder(n_levels, 0, 1) + ladder(n_levels, 1, 0); }

namespace detail {

// scale * sum_j delta_j |1><j|
inline Operator leak_from_one(const LeakageModel& m, double scale) {
  const int n = m.n_levels();
  Operator out = Operator::zero(m.reg());
  for (int j = 2; j < n; ++j)
    out += (scale * m.deltas()[static_cast<std::size_t>(j - 2)]) * ladder(n, 1, j);
  return out;
}

// scale * sum_j conj(delta_j) |j><0|. The conjugate keeps [Z, X] = iY for complex
// amplitudes; for real amplitudes it is the plain delta_j c_j^dag c_0 form.
inline Operator leak_into_zero(const LeakageModel& m, double scale) {
  const int n = m.n_levels();
  Operator out = Operator::zero(m.reg());
  for (int j = 2; j < n; ++j)
    out += (scale * std::conj(m.deltas()[static_cast<std::size_t>(j - 2)])) * ladder(n, j, 0);
  return out;
}

}  // namespace detail

/// The su(2) triple (X, Y, Z) of the leakage Hamiltonian. Needs kappa > 0.
inline OperatorTriple leakage_triple(const LeakageModel& m) {
  if (!(m.kappa_abs() > 0.0)) throw std::domain_error("leakage_triple: kappa must be positive");
  const double inv = 1.0 / m.kappa_abs();
  const cplx i(0.0, 1.0);
  const Operator y_half = detail::leak_from_one(m, inv);
  const Operator z_half = detail::leak_into_zero(m, inv);
  Operator y = y_half + y_half.adjoint();
  Operator z = i * (z_half - z_half.adjoint());
  return {x_op(m.n_levels()), std::move(y), std::move(z)};
}

inline Operator actual_h1(const LeakageModel& m) {
  const Operator leak = detail::leak_from_one(m, 1.0);
  return m.f() * (x_op(m.n_levels()) + leak + leak.adjoint());
}

inline Operator ideal_h1(const LeakageModel& m) {
  return m.f() * std::sqrt(1.0 + m.kappa_abs() * m.kappa_abs()) * x_op(m.n_levels());
}

/// exp[(phi/kappa) sum_j (conj(delta_j) |j><0| - h.c.)] = e^{-i phi Z}. Identity (flagged)
/// when kappa = 0.
inline Dressing dressing_v(const LeakageModel& m) {
  if (!(m.kappa_abs() > 0.0)) return {Operator::identity(m.reg()), true};
  const cplx i(0.0, 1.0);
  const Operator z_half = detail::leak_into_zero(m, 1.0 / m.kappa_abs());
  const Operator z = i * (z_half - z_half.adjoint());
  return {unitary_from_generator(z, m.phi()), false};
}

/// op_distance(H1, D H1_ideal D^dagger)
inline double verify_h1_dressing(const LeakageModel& m) {
  const Dressing v = dressing_v(m);
  return op_distance(actual_h1(m), conjugate(v.unitary, ideal_h1(m)));
}

/// Dressed image of an ideal state.
inline StateVector dressed(const LeakageModel& m, const StateVector& ideal) {
  return dressing_v(m).unitary * ideal;
}

/// |<Psi|H1|Phi> - <Psi_id|H1_id|Phi_id>| for dressed images of the given ideal states.
inline double matrix_element_gap(const LeakageModel& m, const StateVector& psi_ideal,
                                 const StateVector& phi_ideal) {
  const Operator v = dressing_v(m).unitary;
  const cplx actual = matrix_element(v * psi_ideal, actual_h1(m), v * phi_ideal);
  const cplx ideal = matrix_element(psi_ideal, ideal_h1(m), phi_ideal);
  return std::abs(actual - ideal);
}

struct PhaseGate {
  double t_star;
  double theta_eff;
  double residual;
};

/// H2 = eps1 n1 + eps2 n2
inline Operator h2(const LeakageModel& m) {
  return m.eps1() * number_op(m.n_levels(), 1) + m.eps2() * number_op(m.n_levels(), 2);
}

/// Evolving under H2 for t* = 2 pi / eps2 removes n2 and leaves e^{-i theta n1},
/// theta = 2 pi eps1 / eps2.
inline PhaseGate phase_gate_check(const LeakageModel& m) {
  const double t_star = 2.0 * kPi / m.eps2();
  const double theta = 2.0 * kPi * m.eps1() / m.eps2();
  const Operator evolved = unitary_from_generator(h2(m), t_star);
  const Operator target = unitary_from_generator(number_op(m.n_levels(), 1), theta);
  return {t_star, theta, op_distance(evolved, target)};
}

/// op_distance(Dk^dag Dl^dag (n1 x n1) Dl Dk, n1 x n1) on Register[Nk, Nl].
inline double ising_invariance(const LeakageModel& mk, const LeakageModel& ml) {
  const Operator nn = kron(number_op(mk.n_levels(), 1), number_op(ml.n_levels(), 1));
  const Operator v = kron(dressing_v(mk).unitary, dressing_v(ml).unitary);
  return op_distance(v.adjoint() * nn * v, nn);
}

/// Probability of reading out level 1, the one undressed level.
inline double level_one_probability(const StateVector& s) {
  const Operator p = number_op(static_cast<int>(s.reg().total_dim()), 1);
  return matrix_element(s, p, s).real();
}

}  // namespace dressed::leakage
