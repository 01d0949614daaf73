#pragma once

// Rotation identity for partial su(2) triples.
//
// For any (jx, jy, jz) with [jz, jx] = i jy and [jy, jz] = i jx,
//
//   sqrt(1 + delta^2) e^{-i phi jz} jx e^{i phi jz} = jx + delta jy,   delta = tan(phi).
//
// The third relation [jx, jy] = i jz plays no role and is only reported.

#include <cmath>
#include <stdexcept>
#include <string>

#include "dressed/tensor.hpp"

namespace dressed {

class InvalidTripleError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Su2Residuals {
  double r1;  // [jz, jx] - i jy
  double r2;  // [jy, jz] - i jx
  double r3;  // [jx, jy] - i jz, informational only
};

inline Su2Residuals partial_su2_residuals(const Operator& jx, const Operator& jy,
                                          const Operator& jz) {
  require_same_register(jx.reg(), jy.reg(), "partial_su2_residuals");
  require_same_register(jx.reg(), jz.reg(), "partial_su2_residuals");
  const cplx i(0.0, 1.0);
  auto rel = [](const Operator& lhs, const Operator& rhs) {
    return (lhs.matrix() - rhs.matrix()).norm() / std::max(1.0, rhs.frobenius_norm());
  };
  // Normalized by ||i J|| = ||J||.
  return {rel(commutator(jz, jx), i * jy), rel(commutator(jy, jz), i * jx),
          rel(commutator(jx, jy), i * jz)};
}

/// A validated triple. Construction fails unless r1 and r2 are below `tol`.
class OperatorTriple {
public:
  OperatorTriple(Operator jx, Operator jy, Operator jz, double tol = kStructureTol)
      : jx_(std::move(jx)), jy_(std::move(jy)), jz_(std::move(jz)),
        res_(partial_su2_residuals(jx_, jy_, jz_)) {
    if (!(res_.r1 < tol) || !(res_.r2 < tol))
      throw InvalidTripleError("operator triple violates the required commutation relations (r1=" +
                               std::to_string(res_.r1) + ", r2=" + std::to_string(res_.r2) + ")");
    if (!is_hermitian(jz_)) throw NotHermitianError("triple: jz must be Hermitian");
  }

  const Operator& jx() const noexcept { return jx_; }
  const Operator& jy() const noexcept { return jy_; }
  const Operator& jz() const noexcept { return jz_; }
  const Su2Residuals& residuals() const noexcept { return res_; }
  double r1() const noexcept { return res_.r1; }
  double r2() const noexcept { return res_.r2; }
  double r3() const noexcept { return res_.r3; }

private:
  Operator jx_, jy_, jz_;
  Su2Residuals res_;
};

/// e^{-i phi jz} with phi = atan(delta).
inline Operator dressing_rotation(const OperatorTriple& t, double delta) {
  return unitary_from_generator(t.jz(), std::atan(delta));
}

inline double dressing_identity_residual(const OperatorTriple& t, double delta) {
  if (!std::isfinite(delta)) throw std::domain_error("dressing_identity_residual: delta not finite");
  const Operator u = dressing_rotation(t, delta);
  const Operator lhs = std::sqrt(1.0 + delta * delta) * conjugate(u, t.jx());
  const Operator rhs = t.jx() + delta * t.jy();
  return (lhs.matrix() - rhs.matrix()).norm() / std::max(1.0, t.jx().frobenius_norm());
}

/// Validates the triple first; throws InvalidTripleError if the identity does not apply.
inline double dressing_identity_residual(const Operator& jx, const Operator& jy, const Operator& jz,
                                         double delta) {
  return dressing_identity_residual(OperatorTriple(jx, jy, jz), delta);
}

/// A dressing unitary together with a flag marking the degenerate identity case.
struct Dressing {
  Operator unitary;
  bool is_identity = false;
};

}  // namespace dressed
