#include <gtest/gtest.h>

#include <random>

#include "hierflow/pauli.hpp"
#include "hierflow/rational.hpp"

using namespace hierflow;

TEST(Rational, ArithmeticIsExactAndNormalized) {
  const Rational a(1, 3);
  const Rational b(-2, 6);
  EXPECT_EQ(a + b, Rational(0));
  EXPECT_EQ(a * Rational(3), Rational(1));
  EXPECT_EQ((a / Rational(2, 5)).to_string(), "5/6");
  EXPECT_EQ(b.numerator_string(), "-1");
  EXPECT_EQ(b.denominator_string(), "3");
  EXPECT_TRUE(Rational(4, 4).is_one());
  EXPECT_LT(b, a);
}

TEST(Rational, ParseAndParts) {
  EXPECT_EQ(Rational::parse("-7/21"), Rational(-1, 3));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
  EXPECT_EQ(Rational::from_parts("340282366920938463463374607431768211456", "2").numerator_string(),
            "170141183460469231731687303715884105728");
  EXPECT_ANY_THROW(Rational::parse("1/0"));
  EXPECT_ANY_THROW(Rational::parse("abc"));
}

TEST(Rational, InverseOfZeroThrows) {
  EXPECT_THROW(Rational(0).inverse(), std::domain_error);
  EXPECT_EQ(Rational(-3, 4).inverse(), Rational(-4, 3));
}

TEST(Rational, PowersOfTwo) {
  EXPECT_EQ(pow2(3), Rational(8));
  EXPECT_EQ(pow2(-2), Rational(1, 4));
  EXPECT_EQ(pow2(0), Rational(1));
}

TEST(GaussianRational, FieldOperations) {
  const GaussianRational z(Rational(1), Rational(2));
  EXPECT_EQ(z * z.conj(), GaussianRational(Rational(5)));
  EXPECT_EQ(z * z.inverse(), GaussianRational::one());
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(Rational(-1)));
  EXPECT_EQ(z.times_i(), z * GaussianRational::i());
  EXPECT_THROW(GaussianRational().inverse(), std::domain_error);
}

TEST(Sqrt2Extension, HalfPowersOfTwo) {
  using S = Sqrt2Extension<Rational>;
  const S r = S::half_power_of_two(1);
  EXPECT_EQ(r * r, S(Rational(1, 2)));
  EXPECT_EQ(S::half_power_of_two(2), S(Rational(1, 2)));
  EXPECT_EQ(S::sqrt2() * S::sqrt2(), S(Rational(2)));
  EXPECT_EQ(r * r.inverse(), S::one());
  EXPECT_EQ(r.rational_part(), Rational(0));
  EXPECT_EQ(r.sqrt2_part(), Rational(1, 2));
}

TEST(Sqrt2Extension, RequireRationalRejectsIrrational) {
  EXPECT_EQ(require_rational(KondoScalar(Rational(3, 4))), Rational(3, 4));
  EXPECT_THROW(require_rational(KondoScalar::sqrt2()), std::domain_error);
  EXPECT_THROW(require_rational(GaussianRational::i()), std::domain_error);
}

TEST(Pauli, ProductRule) {
  using P = ImpurityElement;
  const auto sx = P::basis(1);
  const auto sy = P::basis(2);
  const auto sz = P::basis(3);
  EXPECT_EQ(sx * sx, P::one());
  EXPECT_EQ(sx * sy, sz * GaussianRational::i());
  EXPECT_EQ(sy * sx, -(sz * GaussianRational::i()));
  EXPECT_EQ(sy * sz, sx * GaussianRational::i());
  EXPECT_EQ(sz * sx, sy * GaussianRational::i());
}

TEST(Pauli, AssociativeOnRandomElements) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-4, 4);
  auto random_element = [&] {
    ImpurityElement e;
    for (int k = 0; k < 4; ++k) {
      const long den = d(rng);
      e[k] = GaussianRational(Rational(d(rng), 1 + den * den), Rational(d(rng)));
    }
    return e;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_element();
    const auto b = random_element();
    const auto c = random_element();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}
