#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "dressed/encoded.hpp"
#include "dressed/exchange.hpp"
#include "dressed/sampling.hpp"
#include "oracles.hpp"

using namespace dressed;
using namespace dressed::exchange;

namespace {

// J [S1.S2 + D.(S1 x S2) + gamma (S1.D)(S2.D)] assembled from raw Pauli matrices.
CMatrix oracle_h(double j, const Vec3& d) {
  CMatrix s[3];
  s[0] = CMatrix::Zero(2, 2);
  s[1] = CMatrix::Zero(2, 2);
  s[2] = CMatrix::Zero(2, 2);
  s[0] << 0, 0.5, 0.5, 0;
  s[1] << 0, cplx(0, -0.5), cplx(0, 0.5), 0;
  s[2] << 0.5, 0, 0, -0.5;
  auto k = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
  };
  const double dd = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double gamma = (std::sqrt(1 + dd * dd) - 1) / (dd * dd);
  CMatrix h = CMatrix::Zero(4, 4);
  for (int a = 0; a < 3; ++a) h += k(s[a], s[a]);
  // D.(S1 x S2) = eps_abc D_a S1_b S2_c
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& c : cyc) {
    h += d[c[0]] * k(s[c[1]], s[c[2]]);
    h -= d[c[0]] * k(s[c[2]], s[c[1]]);
  }
  CMatrix s1d = CMatrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) s1d += d[a] * s[a];
  h += gamma * k(s1d, s1d);
  return j * h;
}

// Rotation about x.
Vec3 rotate_x(const Vec3& v, double angle) {
  return {v[0], std::cos(angle) * v[1] - std::sin(angle) * v[2],
          std::sin(angle) * v[1] + std::cos(angle) * v[2]};
}

}  // namespace

TEST(DMVector, DerivedQuantities) {
  const DMVector dm({0.0, 0.6, 0.8});
  EXPECT_NEAR(dm.d_abs(), 1.0, 1e-15);
  EXPECT_NEAR(dm.scale(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(dm.epsilon(), kPi / 4, 1e-15);
  EXPECT_NEAR(dm.gamma(), 1.0 / (std::sqrt(2.0) + 1.0), 1e-15);
  const DMVector zero;
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.n()[2], 1.0);
}

TEST(ActualHkl, MatchesIndependentAssembly) {
  auto rng = sampling::stream(1, "assembly");
  for (int i = 0; i < 10; ++i) {
    const DMVector dm = sampling::dm_vector(rng);
    const auto p = ExchangePair::two_spin(1.3, dm);
    EXPECT_LT((actual_hkl(p).matrix() - oracle_h(1.3, dm.d())).norm(), 1e-14);
  }
}

TEST(ActualHkl, ZeroDIsIsotropic) {
  const auto p = ExchangePair::two_spin(1.0, DMVector{});
  EXPECT_LT(op_distance(actual_hkl(p), spin::dot(0, 1, p.reg())), 1e-15);
  const auto r = verify_exchange_dressing(p);
  EXPECT_EQ(r.r_w, 0.0);
  EXPECT_TRUE(w_dressing(p).is_identity);
}

TEST(ActualHkl, SingletTripletSpectrum) {
  const DMVector dm({0.3, -0.4, 0.5});
  const auto ev = spectrum(actual_hkl(ExchangePair::two_spin(1.0, dm)));
  const double s = dm.scale();
  EXPECT_NEAR(ev(0), -0.75 * s, 1e-13);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.25 * s, 1e-13);
}

TEST(ActualHkl, ScaleForKnownD) {
  const DMVector dm({0.0, 0.6, 0.5});  // |D|^2 = 0.61
  EXPECT_NEAR(dm.scale(), std::sqrt(1.61), 1e-15);
  const DMVector dm2({0.0, 0.0, 0.8});
  EXPECT_NEAR(dm2.scale(), std::sqrt(1.64), 1e-15);
}

TEST(ActualHkl, RotationCovariance) {
  const Vec3 d{0.2, 0.5, -0.1};
  const double angle = 0.7;
  const Register reg{2, 2};
  Operator gen = spin::at(0, 0, reg) + spin::at(0, 1, reg);
  const Operator r = unitary_from_generator(gen, angle);
  const Operator h = actual_hkl(ExchangePair::two_spin(1.0, DMVector(d)));
  const Operator hr = actual_hkl(ExchangePair::two_spin(1.0, DMVector(rotate_x(d, angle))));
  EXPECT_LT(op_distance(conjugate(r, h), hr), 1e-14);
}

TEST(Dressing, KnownAxis) {
  const auto p = ExchangePair::two_spin(1.0, DMVector({0.0, 0.0, 0.5}));
  const auto r = verify_exchange_dressing(p);
  EXPECT_LT(r.r_w, 1e-14);
  EXPECT_LT(r.r_vl, 1e-14);
  EXPECT_LT(r.r_vk, 1e-14);
  EXPECT_EQ(epsilon_sign(), 1);
}

TEST(Dressing, RandomDUpToPointEight) {
  auto rng = sampling::stream(2, "random-d");
  for (int i = 0; i < 100; ++i) {
    const DMVector dm = sampling::dm_vector(rng);
    const auto p = ExchangePair::two_spin(sampling::uniform(rng, 0.5, 2.0), dm);
    const auto r = verify_exchange_dressing(p);
    EXPECT_LT(std::max({r.r_w, r.r_vl, r.r_vk}), 1e-12);
    EXPECT_LT(spectral_gap_distance(actual_hkl(p), ideal_hkl(p)), 1e-12);
  }
}

TEST(Dressing, NonAdjacentSitesInLargerRegister) {
  const Register reg = Register::uniform(4, 2);
  const ExchangePair p(1.0, DMVector({0.1, 0.3, -0.2}), 3, 1, reg);
  const auto r = verify_exchange_dressing(p);
  EXPECT_LT(std::max({r.r_w, r.r_vl, r.r_vk}), 1e-12);
}

TEST(Dressing, WSquaredIsBlockDressingForm) {
  const DMVector dm({0.4, 0.1, -0.3});
  const auto p = ExchangePair::two_spin(1.0, dm);
  const Operator w = w_dressing(p).unitary;
  const Operator v0 = v_dressing(dm, 0, p.reg()).unitary;
  const Operator v1 = v_dressing(dm, 1, p.reg()).unitary;
  EXPECT_LT(op_distance(w * w, v0.adjoint() * v1), 1e-14);
}

TEST(Dressing, VActsOnOneSite) {
  const DMVector dm({0.4, 0.1, -0.3});
  const Register reg = Register::uniform(3, 2);
  const Operator v = v_dressing(dm, 1, reg).unitary;
  EXPECT_LT(commutator(v, spin::at(0, 0, reg)).frobenius_norm(), 1e-15);
  EXPECT_LT(commutator(v, spin::at(1, 2, reg)).frobenius_norm(), 1e-15);
  EXPECT_GT(commutator(v, spin::at(0, 1, reg)).frobenius_norm(), 1e-3);
  const Operator local = v_dressing(dm, 0, Register{2}).unitary;
  EXPECT_LT(op_distance(v, embed(local, {1}, reg)), 1e-15);
}

TEST(Triples, AxialProductCommutesWithZ) {
  const auto p = ExchangePair::two_spin(1.0, DMVector({0.2, 0.2, 0.6}));
  const auto t = exchange_triples(p);
  EXPECT_LT(commutator(t.a.jz(), axial_product(p)).frobenius_norm(), 1e-15);
  EXPECT_LT(t.a.r3(), 1e-14);
  EXPECT_GT(t.b.r3(), 0.1);
}

TEST(Gamma, TaylorLimit) {
  for (double a : {0.09, 0.05, 0.01, 1e-3}) {
    const DMVector dm({0.0, a, 0.0});
    EXPECT_LT(std::abs(dm.gamma() - 0.5), a);
  }
}

TEST(Gamma, FitRecoversClosedForm) {
  auto rng = sampling::stream(4, "gamma-fit");
  for (int i = 0; i < 10; ++i) {
    const DMVector dm = sampling::dm_vector(rng);
    EXPECT_NEAR(fitted_gamma(ExchangePair::two_spin(1.0, dm)), dm.gamma(), 1e-12);
  }
  EXPECT_THROW(fitted_gamma(ExchangePair::two_spin(1.0, DMVector{})), std::domain_error);
}

TEST(ExchangePair, Validation) {
  EXPECT_THROW(ExchangePair(1.0, DMVector{}, 0, 0, Register{2, 2}), std::invalid_argument);
  EXPECT_THROW(ExchangePair(1.0, DMVector{}, 0, 2, Register{2, 2}), DimensionError);
  EXPECT_THROW(ExchangePair(1.0, DMVector{}, 0, 1, Register{2, 3}), DimensionError);
}
