#pragma once

// Dense complex operators and states on tensor-product registers.
//
// Sites are ordered most-significant first: in a Register {d0, d1, ...} the
// flat index of a basis state (i0, i1, ...) is i0*d1*d2*... + i1*d2*... + ...
// so kron(a, b) places `a` on site 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dressed {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kStructureTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-9;

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Register

class Register {
public:
  explicit Register(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("register must have at least one site");
    total_ = 1;
    for (int d : dims_) {
      if (d < 2) throw DimensionError("local dimension must be >= 2, got " + std::to_string(d));
      total_ *= static_cast<std::size_t>(d);
    }
  }
  Register(std::initializer_list<int> dims) : Register(std::vector<int>(dims)) {}

  /// A chain of `n` identical sites.
  static Register uniform(int n, int dim) {
    if (n < 1) throw DimensionError("register must have at least one site");
    return Register(std::vector<int>(static_cast<std::size_t>(n), dim));
  }

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t sites() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept { return total_; }
  int dim(std::size_t site) const { return dims_.at(site); }

  Register concat(const Register& other) const {
    std::vector<int> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return Register(std::move(d));
  }

  friend bool operator==(const Register&, const Register&) = default;

private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

inline void require_same_register(const Register& a, const Register& b, const char* what) {
  if (!(a == b)) throw DimensionError(std::string(what) + ": register mismatch");
}

// ---------------------------------------------------------------------------
// Operator

class Operator {
public:
  Operator(Register reg, CMatrix m) : reg_(std::move(reg)), m_(std::move(m)) {
    const auto n = static_cast<Eigen::Index>(reg_.total_dim());
    if (m_.rows() != n || m_.cols() != n)
      throw DimensionError("operator matrix side does not match register dimension " +
                           std::to_string(n));
  }

  static Operator zero(const Register& reg) {
    const auto n = static_cast<Eigen::Index>(reg.total_dim());
    return {reg, CMatrix::Zero(n, n)};
  }
  static Operator identity(const Register& reg) {
    const auto n = static_cast<Eigen::Index>(reg.total_dim());
    return {reg, CMatrix::Identity(n, n)};
  }

  const Register& reg() const noexcept { return reg_; }
  const CMatrix& matrix() const noexcept { return m_; }
  Eigen::Index side() const noexcept { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  Operator adjoint() const { return {reg_, m_.adjoint()}; }
  double frobenius_norm() const { return m_.norm(); }

  Operator& operator+=(const Operator& o) {
    require_same_register(reg_, o.reg_, "operator +");
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    require_same_register(reg_, o.reg_, "operator -");
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= cplx(s); }
  friend Operator operator*(double s, Operator a) { return a *= cplx(s); }
  friend Operator operator*(const Operator& a, const Operator& b) {
    require_same_register(a.reg_, b.reg_, "operator *");
    return {a.reg_, a.m_ * b.m_};
  }

private:
  Register reg_;
  CMatrix m_;
};

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// a b a^dagger
inline Operator conjugate(const Operator& a, const Operator& b) { return a * b * a.adjoint(); }

inline double hermiticity_residual(const Operator& a) {
  return (a.matrix() - a.matrix().adjoint()).norm() / std::max(1.0, a.frobenius_norm());
}

inline double unitarity_residual(const Operator& a) {
  const auto n = a.side();
  return (a.matrix() * a.matrix().adjoint() - CMatrix::Identity(n, n)).norm();
}

inline bool is_hermitian(const Operator& a) { return hermiticity_residual(a) < kStructureTol; }
inline bool is_unitary(const Operator& a) { return unitarity_residual(a) < kStructureTol; }

/// ||a - b||_F / max(1, ||a||_F)
inline double op_distance(const Operator& a, const Operator& b) {
  require_same_register(a.reg(), b.reg(), "op_distance");
  return (a.matrix() - b.matrix()).norm() / std::max(1.0, a.frobenius_norm());
}

// ---------------------------------------------------------------------------
// StateVector

class StateVector {
public:
  StateVector(Register reg, CVector amps) : reg_(std::move(reg)), v_(std::move(amps)) {
    if (v_.size() != static_cast<Eigen::Index>(reg_.total_dim()))
      throw DimensionError("state length does not match register dimension");
  }

  static StateVector basis(const Register& reg, std::size_t index) {
    if (index >= reg.total_dim()) throw DimensionError("basis index out of range");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.total_dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return {reg, std::move(v)};
  }

  const Register& reg() const noexcept { return reg_; }
  const CVector& amplitudes() const noexcept { return v_; }
  cplx operator[](Eigen::Index i) const { return v_(i); }
  double norm() const { return v_.norm(); }

  StateVector& normalize() {
    const double n = v_.norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    v_ /= n;
    return *this;
  }
  StateVector normalized() const {
    StateVector s = *this;
    return s.normalize();
  }

  friend StateVector operator*(const Operator& a, const StateVector& s) {
    require_same_register(a.reg(), s.reg_, "operator * state");
    return {s.reg_, a.matrix() * s.v_};
  }
  friend StateVector operator+(const StateVector& a, const StateVector& b) {
    require_same_register(a.reg_, b.reg_, "state +");
    return {a.reg_, a.v_ + b.v_};
  }
  friend StateVector operator-(const StateVector& a, const StateVector& b) {
    require_same_register(a.reg_, b.reg_, "state -");
    return {a.reg_, a.v_ - b.v_};
  }
  friend StateVector operator*(cplx s, const StateVector& a) { return {a.reg_, s * a.v_}; }

private:
  Register reg_;
  CVector v_;
};

/// <a|b>
inline cplx inner(const StateVector& a, const StateVector& b) {
  require_same_register(a.reg(), b.reg(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

/// <a|op|b>
inline cplx matrix_element(const StateVector& a, const Operator& op, const StateVector& b) {
  return inner(a, op * b);
}

// ---------------------------------------------------------------------------
// Tensor structure

inline Operator kron(const Operator& a, const Operator& b) {
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return {a.reg().concat(b.reg()), std::move(out)};
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  const CVector& x = a.amplitudes();
  const CVector& y = b.amplitudes();
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return {a.reg().concat(b.reg()), std::move(out)};
}

/// Acts as `local` on `sites` (in the listed order) and as identity elsewhere.
inline Operator embed(const Operator& local, std::span<const std::size_t> sites,
                      const Register& reg) {
  const auto& ldims = local.reg().dims();
  if (sites.size() != ldims.size())
    throw DimensionError("embed: local operator has " + std::to_string(ldims.size()) +
                         " sites but " + std::to_string(sites.size()) + " were given");
  for (std::size_t a = 0; a < sites.size(); ++a) {
    if (sites[a] >= reg.sites()) throw DimensionError("embed: site index out of range");
    if (reg.dim(sites[a]) != ldims[a]) throw DimensionError("embed: local dimension mismatch");
    for (std::size_t b = 0; b < a; ++b)
      if (sites[a] == sites[b]) throw DimensionError("embed: duplicate site index");
  }

  // Split every flat index into (local index, index over the remaining sites).
  const std::size_t n = reg.total_dim();
  const std::size_t nsites = reg.sites();
  std::vector<int> local_pos(nsites, -1);
  for (std::size_t a = 0; a < sites.size(); ++a) local_pos[sites[a]] = static_cast<int>(a);

  std::vector<Eigen::Index> loc(n), rest(n);
  std::vector<std::size_t> lstride(sites.size());
  {
    std::size_t s = 1;
    for (std::size_t a = sites.size(); a-- > 0;) {
      lstride[a] = s;
      s *= static_cast<std::size_t>(ldims[a]);
    }
  }
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t r = idx, l = 0, rr = 0, rstride = 1;
    for (std::size_t site = nsites; site-- > 0;) {
      const auto d = static_cast<std::size_t>(reg.dim(site));
      const std::size_t digit = r % d;
      r /= d;
      if (local_pos[site] >= 0) {
        l += digit * lstride[static_cast<std::size_t>(local_pos[site])];
      } else {
        rr += digit * rstride;
        rstride *= d;
      }
    }
    loc[idx] = static_cast<Eigen::Index>(l);
    rest[idx] = static_cast<Eigen::Index>(rr);
  }

  const CMatrix& m = local.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rest[i] == rest[j]) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(loc[i], loc[j]);
  return {reg, std::move(out)};
}

inline Operator embed(const Operator& local, std::initializer_list<std::size_t> sites,
                      const Register& reg) {
  return embed(local, std::span<const std::size_t>(sites.begin(), sites.size()), reg);
}

// ---------------------------------------------------------------------------
// Spectra and exponentials

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns
};

inline Eigensystem hermitian_eigensystem(const Operator& h) {
  if (!is_hermitian(h))
    throw NotHermitianError("hermitian_eigensystem: input is not Hermitian (residual " +
                            std::to_string(hermiticity_residual(h)) + ")");
  const CMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// exp(-i theta k) for Hermitian k.
inline Operator unitary_from_generator(const Operator& k, double theta) {
  if (!is_hermitian(k))
    throw NotHermitianError("unitary_from_generator: generator is not Hermitian");
  if (theta == 0.0) return Operator::identity(k.reg());
  const Eigensystem es = hermitian_eigensystem(k);
  CVector phases(es.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(cplx(0.0, -theta * es.values(i)));
  return {k.reg(), es.vectors * phases.asDiagonal() * es.vectors.adjoint()};
}

inline Eigen::VectorXd spectrum(const Operator& h) { return hermitian_eigensystem(h).values; }

/// Largest absolute difference between the sorted spectra of two Hermitian operators.
inline double spectral_gap_distance(const Operator& a, const Operator& b) {
  require_same_register(a.reg(), b.reg(), "spectral_gap_distance");
  return (spectrum(a) - spectrum(b)).cwiseAbs().maxCoeff();
}

struct GroundState {
  double energy;
  StateVector state;
  bool degenerate;
};

inline GroundState ground_state(const Operator& h, double degeneracy_tol = kDegeneracyTol) {
  const Eigensystem es = hermitian_eigensystem(h);
  const bool degenerate = es.values.size() < 2 || es.values(1) - es.values(0) < degeneracy_tol;
  return {es.values(0), StateVector(h.reg(), es.vectors.col(0)), degenerate};
}

// ---------------------------------------------------------------------------
// Spin-1/2 operators, S = sigma/2

namespace spin {

inline Operator sx() {
  CMatrix m(2, 2);
  m << 0, 0.5, 0.5, 0;
  return {Register{2}, m};
}
inline Operator sy() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -0.5), cplx(0, 0.5), 0;
  return {Register{2}, m};
}
inline Operator sz() {
  CMatrix m(2, 2);
  m << 0.5, 0, 0, -0.5;
  return {Register{2}, m};
}
inline std::array<Operator, 3> components() { return {sx(), sy(), sz()}; }

/// Component `axis` (0,1,2 = x,y,z) of the spin on `site`.
inline Operator at(int axis, std::size_t site, const Register& reg) {
  return embed(components().at(static_cast<std::size_t>(axis)), {site}, reg);
}

/// n . S_site
inline Operator along(const Vec3& n, std::size_t site, const Register& reg) {
  Operator out = Operator::zero(reg);
  for (int a = 0; a < 3; ++a)
    if (n[static_cast<std::size_t>(a)] != 0.0) out += n[static_cast<std::size_t>(a)] * at(a, site, reg);
  return out;
}

/// S_k . S_l
inline Operator dot(std::size_t k, std::size_t l, const Register& reg) {
  Operator out = Operator::zero(reg);
  for (int a = 0; a < 3; ++a) out += at(a, k, reg) * at(a, l, reg);
  return out;
}

/// n . (S_k x S_l), right-handed cross product in (k, l) order.
inline Operator cross_along(const Vec3& n, std::size_t k, std::size_t l, const Register& reg) {
  Operator out = Operator::zero(reg);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const double w = n[static_cast<std::size_t>(a)];
    if (w == 0.0) continue;
    out += w * (at(b, k, reg) * at(c, l, reg) - at(c, k, reg) * at(b, l, reg));
  }
  return out;
}

}  // namespace spin

// ---------------------------------------------------------------------------
// Small 3-vector helpers

inline double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scale3(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

}  // namespace dressed
