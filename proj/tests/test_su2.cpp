#include <cmath>

#include <gtest/gtest.h>

#include "dressed/exchange.hpp"
#include "dressed/leakage.hpp"
#include "dressed/sampling.hpp"
#include "dressed/su2.hpp"
#include "oracles.hpp"

using namespace dressed;

namespace {

OperatorTriple paulis() { return {spin::sx(), spin::sy(), spin::sz()}; }

leakage::LeakageModel complex_model(sampling::Rng& rng, int n) {
  std::vector<cplx> d;
  for (int j = 2; j < n; ++j) d.push_back(0.7 * sampling::complex_normal(rng));
  return {n, 1.0, d};
}

}  // namespace

TEST(PartialSu2, SpinHalfSatisfiesAllThree) {
  const auto r = partial_su2_residuals(spin::sx(), spin::sy(), spin::sz());
  EXPECT_LT(r.r1, 1e-15);
  EXPECT_LT(r.r2, 1e-15);
  EXPECT_LT(r.r3, 1e-15);
}

TEST(PartialSu2, LeakageTriplesAreValidForEveryLevelCount) {
  auto rng = sampling::stream(11, "leakage-triples");
  for (int n = 3; n <= 8; ++n) {
    const auto t = leakage::leakage_triple(complex_model(rng, n));
    EXPECT_LT(t.r1(), 1e-14) << n;
    EXPECT_LT(t.r2(), 1e-14) << n;
  }
}

TEST(PartialSu2, ExchangeTripleBBreaksThirdRelation) {
  const auto p = exchange::ExchangePair::two_spin(1.0, exchange::DMVector({0.2, -0.1, 0.4}));
  const auto t = exchange::exchange_triples(p);
  EXPECT_GT(t.b.r3(), 0.1);
  EXPECT_LT(t.b.r1(), 1e-14);
  EXPECT_LT(t.b.r2(), 1e-14);
}

TEST(OperatorTriple, RejectsCorruptedTriple) {
  // Swapping roles breaks [jz, jx] = i jy.
  EXPECT_THROW(OperatorTriple(spin::sx(), spin::sz(), spin::sy()), InvalidTripleError);
  EXPECT_THROW(OperatorTriple(spin::sx(), 2.0 * spin::sy(), spin::sz()), InvalidTripleError);
}

TEST(DressingIdentity, ZeroDeltaIsExact) {
  EXPECT_EQ(dressing_identity_residual(paulis(), 0.0), 0.0);
}

TEST(DressingIdentity, UnitDeltaOnPaulis) {
  EXPECT_LT(dressing_identity_residual(paulis(), 1.0), 1e-14);
  // phi = pi/4 for delta = 1, checked against a Taylor exponential.
  const CMatrix u = oracle::unitary_taylor(spin::sz().matrix(), kPi / 4);
  const CMatrix lhs = std::sqrt(2.0) * u * spin::sx().matrix() * u.adjoint();
  EXPECT_LT((lhs - (spin::sx() + spin::sy()).matrix()).norm(), 1e-13);
}

TEST(DressingIdentity, SeededSweepOverTriples) {
  auto rng = sampling::stream(3, "su2-sweep");
  std::vector<OperatorTriple> triples{paulis()};
  for (int n : {3, 5, 8}) triples.push_back(leakage::leakage_triple(complex_model(rng, n)));
  const auto p = exchange::ExchangePair::two_spin(1.0, sampling::dm_vector(rng));
  const auto ex = exchange::exchange_triples(p);
  triples.push_back(ex.a);
  triples.push_back(ex.b);
  for (const auto& t : triples) {
    for (int i = 0; i < 50; ++i) {
      const double d = sampling::uniform(rng, -5.0, 5.0);
      EXPECT_LT(dressing_identity_residual(t, d), 1e-12) << d;
    }
  }
}

TEST(DressingRotation, AnglesAdd) {
  const auto t = paulis();
  const double a = 0.3, b = -1.1;
  const Operator lhs = dressing_rotation(t, a) * dressing_rotation(t, b);
  const Operator rhs = unitary_from_generator(t.jz(), std::atan(a) + std::atan(b));
  EXPECT_LT(op_distance(lhs, rhs), 1e-14);
}
