#include <gtest/gtest.h>

#include <random>

#include "hierflow/gaussian.hpp"
#include "hierflow/models.hpp"
#include "hierflow/verify.hpp"

using namespace hierflow;
using GP = GrassmannPolynomial<Rational>;

namespace {

GeneratorId in(int slot, Species s, Conj c, Spin sp = Spin::Up) { return GeneratorId::internal(slot, s, sp, c); }

PropagatorTable two_by_two(const Rational& aa, const Rational& ab, const Rational& ba, const Rational& bb) {
  MonomialKey u;
  for (auto s : {Species::A, Species::B}) {
    for (auto c : {Conj::Minus, Conj::Plus}) u = u | MonomialKey::single(in(0, s, c));
  }
  PropagatorTable t(u);
  t.set(in(0, Species::A, Conj::Minus), in(0, Species::A, Conj::Plus), aa);
  t.set(in(0, Species::A, Conj::Minus), in(0, Species::B, Conj::Plus), ab);
  t.set(in(0, Species::B, Conj::Minus), in(0, Species::A, Conj::Plus), ba);
  t.set(in(0, Species::B, Conj::Minus), in(0, Species::B, Conj::Plus), bb);
  return t;
}

}  // namespace

TEST(Gaussian, NormalizationAndTwoPoint) {
  const auto t = two_by_two(Rational(2), Rational(1, 3), Rational(-1), Rational(5));
  EXPECT_EQ(integrate_polynomial(GP::one(), t), GP::one());
  const GP p = GP::product_of({in(0, Species::A, Conj::Minus), in(0, Species::B, Conj::Plus)});
  EXPECT_EQ(integrate_polynomial(p, t), GP(Rational(1, 3)));
  const GP q = GP::product_of({in(0, Species::B, Conj::Plus), in(0, Species::A, Conj::Minus)});
  EXPECT_EQ(integrate_polynomial(q, t), GP(Rational(-1, 3)));
}

TEST(Gaussian, FourPointIsDeterminant) {
  const auto t = two_by_two(Rational(2), Rational(1, 3), Rational(-1), Rational(5));
  const GP p = GP::product_of({in(0, Species::A, Conj::Minus), in(0, Species::A, Conj::Plus),
                               in(0, Species::B, Conj::Minus), in(0, Species::B, Conj::Plus)});
  // psi_a^- psi_a^+ psi_b^- psi_b^+ pairs as g_aa g_bb - g_ab g_ba.
  EXPECT_EQ(integrate_polynomial(p, t), GP(Rational(2) * Rational(5) - Rational(1, 3) * Rational(-1)));
  EXPECT_EQ(berezin_integrate_oracle(p, t), integrate_polynomial(p, t));
}

TEST(Gaussian, OddMonomialsIntegrateToZero) {
  const auto t = two_by_two(Rational(1), Rational(0), Rational(0), Rational(1));
  EXPECT_TRUE(integrate_polynomial(GP::generator(in(0, Species::A, Conj::Minus)), t).is_zero());
  const GP p = GP::product_of({in(0, Species::A, Conj::Minus), in(0, Species::B, Conj::Minus)});
  EXPECT_TRUE(integrate_polynomial(p, t).is_zero());
}

TEST(Gaussian, ExternalGeneratorsKeepTheirOrderSign) {
  const auto t = two_by_two(Rational(3), Rational(0), Rational(0), Rational(1));
  const GeneratorId x = GeneratorId::external(Species::A, Spin::Up, Conj::Minus);
  const GP p = GP::product_of({in(0, Species::A, Conj::Minus), x, in(0, Species::A, Conj::Plus)});
  EXPECT_EQ(integrate_polynomial(p, t), GP::generator(x, Rational(-3)));
  EXPECT_EQ(berezin_integrate_oracle(p, t), GP::generator(x, Rational(-3)));
}

TEST(Gaussian, TableRejectsBadEntries) {
  auto t = two_by_two(Rational(1), Rational(0), Rational(0), Rational(1));
  EXPECT_ANY_THROW(t.set(in(0, Species::A, Conj::Plus), in(0, Species::A, Conj::Minus), Rational(1)));
  EXPECT_ANY_THROW(t.set(in(1, Species::A, Conj::Minus), in(0, Species::A, Conj::Plus), Rational(1)));
}

TEST(Gaussian, SingularDensityThrows) {
  const auto t = two_by_two(Rational(1), Rational(1), Rational(1), Rational(1));
  EXPECT_THROW(gaussian_density(t), SingularPropagator);
}

TEST(Gaussian, ParallelMatchesSerial) {
  const auto spec = graphene_model();
  std::mt19937_64 rng(17);
  const std::vector<int> ords = (spec.propagator.universe() | MonomialKey::slot_mask(kExternalSlot)).ordinals();
  std::uniform_int_distribution<std::size_t> pick(0, ords.size() - 1);
  GP p;
  for (int k = 0; k < 2000; ++k) {
    MonomialKey key;
    for (int d = 0; d < 6; ++d) key = key | MonomialKey::single(ords[pick(rng)]);
    p += GP::monomial(key, Rational(k % 7 - 3, 1 + k % 5));
  }
  EXPECT_EQ(integrate_polynomial(p, spec.propagator), integrate_polynomial_serial(p, spec.propagator));
}

TEST(Gaussian, WickAgreesWithBerezinOnRandomPropagators) {
  for (const auto& c : verify_grassmann_suite(99)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}
