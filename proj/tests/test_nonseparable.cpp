#include <cmath>

#include <gtest/gtest.h>

#include "dressed/nonseparable.hpp"
#include "oracles.hpp"

using namespace dressed;
using namespace dressed::nonseparable;

TEST(Ring, Validation) {
  EXPECT_THROW(RingModel(2, 0.1), std::invalid_argument);
  EXPECT_THROW(RingModel(4, NAN), std::invalid_argument);
  const RingModel m(4, 0.1);
  EXPECT_EQ(m.next(3), 0u);
  EXPECT_EQ(m.prev(0), 3u);
  EXPECT_THROW(actual_drive_generator(m, 4), std::out_of_range);
}

TEST(Ring, ZeroDeltaIsPlainDrive) {
  const RingModel m(4, 0.0);
  EXPECT_EQ(dressing_residual(m, 2), 0.0);
  EXPECT_LT(op_distance(actual_drive_generator(m, 1), spin::at(1, 1, m.reg())), 1e-16);
}

TEST(Ring, GeneratorIsHermitianWithThreeSiteSupport) {
  const RingModel m(5, 0.2);
  const Operator g = actual_drive_generator(m, 0);
  EXPECT_TRUE(is_hermitian(g));
  // Sites 2 and 3 are outside {4, 0, 1}.
  for (std::size_t s : {2, 3})
    for (int a = 0; a < 3; ++a)
      EXPECT_LT(commutator(g, spin::at(a, s, m.reg())).frobenius_norm(), 1e-15);
}

TEST(Dressing, DiagonalUnitaryMatchingTaylorOracle) {
  const RingModel m(4, 0.05);
  const Operator u = nonlocal_dressing(m);
  EXPECT_LT(unitarity_residual(u), 1e-14);
  const CMatrix oracle =
      oracle::unitary_taylor(zz_ring(m).matrix(), -dressing_orientation() * m.delta());
  EXPECT_LT((u.matrix() - oracle).norm(), 1e-13);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_LT(commutator(u, spin::at(2, k, m.reg())).frobenius_norm(), 1e-15);
}

TEST(Dressing, ZInvariance) {
  const RingModel m(5, 0.3);
  const Operator u = nonlocal_dressing(m);
  const Register reg = m.reg();
  for (std::size_t k = 0; k < 5; ++k) {
    const Operator z = spin::at(2, k, reg);
    EXPECT_LT(op_distance(conjugate(u, z), z), 1e-14);
    const Operator zz = z * spin::at(2, (k + 2) % 5, reg);
    EXPECT_LT(op_distance(conjugate(u, zz), zz), 1e-14);
  }
}

TEST(Scaling, QuadraticRatio) {
  for (int n : {4, 5}) {
    const RingModel m(n, 0.0);
    const auto r = residual_scaling(m, 0, {1e-2, 1e-3});
    const double ratio = r[0] / r[1];
    EXPECT_GE(ratio, 80.0) << n;
    EXPECT_LE(ratio, 125.0) << n;
  }
}

TEST(Scaling, ExponentIsTwo) {
  const RingModel m(4, 0.0);
  const std::vector<double> d{3e-2, 1e-2, 3e-3, 1e-3};
  EXPECT_NEAR(scaling_exponent(d, residual_scaling(m, 1, d)), 2.0, 0.1);
  EXPECT_THROW(residual_scaling(m, 0, {1e-3, 1e-2}), std::invalid_argument);
}

TEST(Scaling, NoFirstOrderTerm) {
  for (int n : {4, 5}) EXPECT_LT(std::abs(residual_slope_at_zero(RingModel(n, 0.0), 0)), 1e-6);
}

TEST(Scaling, OppositeOrientationIsOnlyLinear) {
  const RingModel m(4, 1e-3);
  const Operator wrong = unitary_from_generator(zz_ring(m), dressing_orientation() * m.delta());
  const double r = op_distance(conjugate(wrong, actual_drive_generator(m, 0)), spin::at(1, 0, m.reg()));
  EXPECT_GT(r, 10 * dressing_residual(m, 0));
}
