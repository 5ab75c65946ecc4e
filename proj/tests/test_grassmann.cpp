#include <gtest/gtest.h>

#include <random>

#include "hierflow/coupling_polynomial.hpp"
#include "hierflow/errors.hpp"
#include "hierflow/grassmann.hpp"
#include "hierflow/rg_engine.hpp"

using namespace hierflow;
using GP = GrassmannPolynomial<Rational>;

namespace {

GeneratorId g(int slot, Species s, Spin sp, Conj c) {
  return slot == kExternalSlot ? GeneratorId::external(s, sp, c) : GeneratorId::internal(slot, s, sp, c);
}

const GeneratorId am = g(0, Species::A, Spin::Up, Conj::Minus);
const GeneratorId ap = g(0, Species::A, Spin::Up, Conj::Plus);
const GeneratorId bm = g(0, Species::B, Spin::Up, Conj::Minus);
const GeneratorId bp = g(0, Species::B, Spin::Up, Conj::Plus);
const GeneratorId xm = g(kExternalSlot, Species::A, Spin::Down, Conj::Minus);

GP random_even(std::mt19937_64& rng, const std::vector<GeneratorId>& gens, int terms) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<long> c(-3, 3);
  GP p;
  for (int t = 0; t < terms; ++t) p += GP::product_of({gens[pick(rng)], gens[pick(rng)]}, Rational(c(rng), 2));
  return p;
}

}  // namespace

TEST(Generator, OrdinalRoundTrip) {
  for (int o = 0; o < kMaxGenerators; ++o) EXPECT_EQ(GeneratorId::from_ordinal(o).ordinal(), o);
  EXPECT_EQ(ap.conjugate(), am);
  EXPECT_EQ(xm.name(), "a_dn^-@ext");
}

TEST(Grassmann, GeneratorsAnticommuteAndSquareToZero) {
  const GP a = GP::generator(am);
  const GP b = GP::generator(bp);
  EXPECT_EQ(a * b, -(b * a));
  EXPECT_TRUE((a * a).is_zero());
  EXPECT_TRUE(GP::product_of({am, bp, am}).is_zero());
}

TEST(Grassmann, CanonicalizeTracksPermutationSign) {
  const auto fwd = canonicalize<Rational>({am, bm, ap}, Rational(1));
  const auto rev = canonicalize<Rational>({ap, bm, am}, Rational(1));
  ASSERT_TRUE(fwd && rev);
  EXPECT_EQ(fwd->first, rev->first);
  EXPECT_EQ(fwd->second, -rev->second);
  EXPECT_FALSE(canonicalize<Rational>({am, am}, Rational(1)).has_value());
}

TEST(Grassmann, ProductIsAssociativeAndDistributive) {
  std::mt19937_64 rng(3);
  const std::vector<GeneratorId> gens = {am, ap, bm, bp, xm};
  std::uniform_int_distribution<int> pick(0, 4);
  auto random_poly = [&] {
    GP p(Rational(1, 2));
    for (int t = 0; t < 4; ++t) p += GP::generator(gens[pick(rng)], Rational(t + 1));
    p += GP::product_of({gens[pick(rng)], gens[pick(rng)]}, Rational(-2));
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const GP x = random_poly();
    const GP y = random_poly();
    const GP z = random_poly();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
  }
}

TEST(Grassmann, SubstitutionIsHomomorphic) {
  const GP image = GP::generator(am.with_slot(1)) + GP::generator(am, Rational(1, 2));
  std::map<GeneratorId, GP> m = {{am, image}};
  const GP p = GP::product_of({am, bp}) + GP::generator(am);
  const GP q = GP::product_of({bm, am});
  EXPECT_EQ(substitute(p * q, m), substitute(p, m) * substitute(q, m));
  std::map<GeneratorId, GP> bad = {{am, GP(Rational(1))}};
  EXPECT_THROW(substitute(p, bad), InvalidSubstitution);
}

TEST(Grassmann, ExpOfNilpotentTerminates) {
  const GP v = GP::product_of({am, ap}, Rational(2)) + GP::product_of({bm, bp});
  const GP e = exp_truncated(v);
  EXPECT_EQ(e, GP(Rational(1)) + v + GP::product_of({am, ap, bm, bp}, Rational(2)));
}

TEST(Grassmann, LogInvertsExp) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GP v = random_even(rng, {am, ap, bm, bp, xm}, 5);
    const Rational c0(trial + 2, 3);
    const GP p = exp_truncated(v) * GP(c0);
    const auto [c, rest] = log_truncated(p);
    EXPECT_EQ(c, c0);
    EXPECT_EQ(rest, v - GP(v.constant_term()));
  }
}

TEST(Grassmann, LogRequiresUnitConstant) { EXPECT_ANY_THROW(log_truncated(GP::product_of({am, ap}))); }

TEST(Grassmann, ExpLinearCombinationMatchesExpTruncated) {
  using P = CouplingPolynomial<Rational>;
  using GPP = GrassmannPolynomial<P>;
  std::mt19937_64 rng(5);
  const std::vector<GeneratorId> gens = {am, ap, bm, bp, xm, g(0, Species::A, Spin::Down, Conj::Plus)};
  std::vector<GP> v;
  for (int i = 0; i < 3; ++i) v.push_back(random_even(rng, gens, 4));
  GPP sum;
  for (int i = 0; i < 3; ++i) sum += with_coupling(v[static_cast<std::size_t>(i)], i);
  EXPECT_EQ(exp_linear_combination(v), exp_truncated(sum));
}

TEST(CouplingPolynomial, DerivativeAndEvaluate) {
  using P = RationalPolynomial;
  const P l0 = P::variable(0);
  const P l1 = P::variable(1);
  const P p = l0 * l0 * l1 + P(Rational(3)) * l1;
  EXPECT_EQ(p.derivative(0), P(Rational(2)) * l0 * l1);
  EXPECT_EQ(p.derivative(1), l0 * l0 + P(Rational(3)));
  const std::vector<Rational> at = {Rational(2), Rational(-1, 3)};
  EXPECT_EQ(p.evaluate<Rational>(at, [](const Rational& r) { return r; }), Rational(-4, 3) - Rational(1));
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(l0.pow(3), l0 * l0 * l0);
}
