#pragma once

// Seeded random draws shared by the tests and the verification harness.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "dressed/exchange.hpp"
#include "dressed/tensor.hpp"

namespace dressed::sampling {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a, used to give each named stream its own seed.
constexpr std::uint64_t hash_name(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent stream for case `index` of stream `name` under `seed`.
inline Rng stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
  return Rng(mix64(mix64(seed ^ hash_name(name)) + index));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline cplx complex_normal(Rng& rng) {
  const double re = normal(rng);
  return {re, normal(rng)};
}

inline Vec3 unit_vector(Rng& rng) {
  for (;;) {
    const Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double n = norm3(v);
    if (n > 1e-8) return scale3(v, 1.0 / n);
  }
}

/// Direction uniform on the sphere, magnitude uniform in [lo, hi].
inline exchange::DMVector dm_vector(Rng& rng, double lo = 0.01, double hi = 0.8) {
  const Vec3 n = unit_vector(rng);
  return exchange::DMVector(scale3(n, uniform(rng, lo, hi)));
}

inline StateVector random_state(Rng& rng, const Register& reg) {
  CVector v(static_cast<Eigen::Index>(reg.total_dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_normal(rng);
  return StateVector(reg, v).normalize();
}

inline Operator random_hermitian(Rng& rng, const Register& reg) {
  const auto n = static_cast<Eigen::Index>(reg.total_dim());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_normal(rng);
  return {reg, 0.5 * (m + m.adjoint())};
}

/// Normalized logical amplitudes (a, b).
inline std::array<cplx, 2> logical_amplitudes(Rng& rng) {
  cplx a = complex_normal(rng);
  cplx b = complex_normal(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

}  // namespace dressed::sampling
