#include "hierflow/rational.hpp"

#include <cctype>

namespace hierflow {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_parts(const std::string& numerator, const std::string& denominator) {
  mpz_class num;
  mpz_class den;
  if (num.set_str(numerator, 10) != 0 || den.set_str(denominator, 10) != 0) {
    throw std::invalid_argument("Rational: malformed integer in '" + numerator + "/" + denominator +
                                "'");
  }
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  return Rational(mpq_class(num, den));
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return from_parts(text, "1");
  return from_parts(text.substr(0, slash), text.substr(slash + 1));
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

Rational pow2(int exponent) {
  mpz_class p = 1;
  const unsigned long shift = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), shift);
  if (exponent >= 0) return Rational(mpq_class(p));
  return Rational(mpq_class(mpz_class(1), p));
}

GaussianRational GaussianRational::inverse() const {
  const Rational norm = re_ * re_ + im_ * im_;
  if (norm.is_zero()) throw std::domain_error("GaussianRational: inverse of zero");
  const Rational inv = norm.inverse();
  return {re_ * inv, -(im_ * inv)};
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return im_.to_string() + "i";
  const bool negative = im_.sign() < 0;
  return re_.to_string() + (negative ? "-" : "+") + (negative ? (-im_).to_string() : im_.to_string()) +
         "i";
}

Rational require_rational(const Rational& x) { return x; }

Rational require_rational(const GaussianRational& x) {
  if (!x.is_real()) throw std::domain_error("expected a real value, got " + x.to_string());
  return x.real();
}

Rational require_rational(const KondoScalar& x) {
  if (!x.sqrt2_part().is_zero()) {
    throw std::domain_error("expected a rational value, got " + x.to_string());
  }
  return require_rational(x.rational_part());
}

}  // namespace hierflow
