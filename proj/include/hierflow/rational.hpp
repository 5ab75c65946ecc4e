#pragma once

// Exact scalar fields used as coefficients: Q, Q(i) and Q(i)(sqrt 2).

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hierflow {

/// Arbitrary-precision rational, always stored reduced with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "-p" or "p/q" (decimal integers of any length).
  static Rational parse(const std::string& text);
  static Rational from_parts(const std::string& numerator, const std::string& denominator);

  static Rational zero() { return {}; }
  static Rational one() { return Rational(1); }

  const mpq_class& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  int sign() const { return sgn(value_); }

  std::string numerator_string() const { return value_.get_num().get_str(); }
  std::string denominator_string() const { return value_.get_den().get_str(); }
  std::string to_string() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }

  /// Throws std::domain_error on zero.
  Rational inverse() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class value_;
};

/// Rational power of two, 2^k for integer k.
Rational pow2(int exponent);

/// a + b i with a, b rational.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(Rational(1)); }
  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational times_i() const { return {-im_, re_}; }
  GaussianRational inverse() const;
  std::string to_string() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

 private:
  Rational re_;
  Rational im_;
};

/// a + b sqrt(2) over a field F that does not contain sqrt(2) (Q or Q(i)).
template <class F>
class Sqrt2Extension {
 public:
  Sqrt2Extension() = default;
  Sqrt2Extension(F a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Sqrt2Extension(long a) : a_(a) {}          // NOLINT(google-explicit-constructor)
  Sqrt2Extension(const Rational& a) requires(!std::is_same_v<F, Rational>)  // NOLINT
      : a_(a) {}
  Sqrt2Extension(F a, F b) : a_(std::move(a)), b_(std::move(b)) {}

  static Sqrt2Extension zero() { return {}; }
  static Sqrt2Extension one() { return Sqrt2Extension(F::one()); }
  static Sqrt2Extension sqrt2() { return {F::zero(), F::one()}; }
  /// 2^(-k/2) for integer k.
  static Sqrt2Extension half_power_of_two(int k) {
    // 2^(-k/2) = 2^(-floor(k/2)) * (1/sqrt2)^(k mod 2), with 1/sqrt2 = sqrt2/2.
    const int whole = k >= 0 ? k / 2 : -((-k + 1) / 2);
    const int odd = k - 2 * whole;
    const F scale(pow2(-whole));
    if (odd == 0) return Sqrt2Extension(scale);
    return {F::zero(), scale * F(Rational(1, 2))};
  }

  const F& rational_part() const { return a_; }
  const F& sqrt2_part() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Sqrt2Extension inverse() const {
    // (a + b r)^-1 = (a - b r) / (a^2 - 2 b^2)
    const F norm = a_ * a_ - F(Rational(2)) * b_ * b_;
    const F inv = norm.inverse();
    return {a_ * inv, -(b_ * inv)};
  }
  Sqrt2Extension times_i() const
    requires requires(F f) { f.times_i(); }
  {
    return {a_.times_i(), b_.times_i()};
  }
  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    return "(" + a_.to_string() + ")+(" + b_.to_string() + ")*sqrt2";
  }

  Sqrt2Extension operator-() const { return {-a_, -b_}; }
  Sqrt2Extension& operator+=(const Sqrt2Extension& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Sqrt2Extension& operator-=(const Sqrt2Extension& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Sqrt2Extension& operator*=(const Sqrt2Extension& o) {
    F a = a_ * o.a_ + F(Rational(2)) * b_ * o.b_;
    b_ = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    return *this;
  }
  Sqrt2Extension& operator/=(const Sqrt2Extension& o) { return *this *= o.inverse(); }

  friend Sqrt2Extension operator+(Sqrt2Extension x, const Sqrt2Extension& y) { return x += y; }
  friend Sqrt2Extension operator-(Sqrt2Extension x, const Sqrt2Extension& y) { return x -= y; }
  friend Sqrt2Extension operator*(Sqrt2Extension x, const Sqrt2Extension& y) { return x *= y; }
  friend Sqrt2Extension operator/(Sqrt2Extension x, const Sqrt2Extension& y) { return x /= y; }
  friend bool operator==(const Sqrt2Extension&, const Sqrt2Extension&) = default;

 private:
  F a_;
  F b_;
};

using KondoScalar = Sqrt2Extension<GaussianRational>;

/// Projects an exact scalar onto Q, throwing std::domain_error when it has an
/// imaginary or sqrt(2) component.
Rational require_rational(const Rational& x);
Rational require_rational(const GaussianRational& x);
Rational require_rational(const KondoScalar& x);

}  // namespace hierflow
