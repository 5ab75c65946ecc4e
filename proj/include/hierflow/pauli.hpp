#pragma once

// Impurity algebra span{1, S1, S2, S3} with S^i S^j = delta_ij 1 + i eps_ijk S^k.

#include <array>
#include <string>

#include "hierflow/rational.hpp"

namespace hierflow {

template <class S>
class PauliElement {
 public:
  PauliElement() = default;
  PauliElement(S scalar) { c_[0] = std::move(scalar); }  // NOLINT(google-explicit-constructor)
  PauliElement(long scalar) { c_[0] = S(scalar); }      // NOLINT(google-explicit-constructor)
  PauliElement(const Rational& scalar)                    // NOLINT(google-explicit-constructor)
    requires(!std::is_same_v<S, Rational>)
  {
    c_[0] = S(scalar);
  }
  PauliElement(S c0, S c1, S c2, S c3) : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  static PauliElement zero() { return {}; }
  static PauliElement one() { return PauliElement(S::one()); }
  /// Basis element: 0 is the identity, 1..3 are S^1..S^3.
  static PauliElement basis(int k) {
    PauliElement e;
    e.c_[k] = S::one();
    return e;
  }

  const S& operator[](int k) const { return c_[k]; }
  S& operator[](int k) { return c_[k]; }
  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
  bool is_scalar() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

  std::string to_string() const {
    static const char* names[4] = {"1", "S1", "S2", "S3"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (c_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[k].to_string() + ")" + names[k];
    }
    return out.empty() ? "0" : out;
  }

  PauliElement operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
  PauliElement& operator+=(const PauliElement& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  PauliElement& operator-=(const PauliElement& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend PauliElement operator+(PauliElement a, const PauliElement& b) { return a += b; }
  friend PauliElement operator-(PauliElement a, const PauliElement& b) { return a -= b; }

  // (a0 + a.S)(b0 + b.S) = a0 b0 + a.b + (a0 b + b0 a + i a x b).S
  friend PauliElement operator*(const PauliElement& x, const PauliElement& y) {
    const auto& a = x.c_;
    const auto& b = y.c_;
    PauliElement r;
    r.c_[0] = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    const S cross1 = a[2] * b[3] - a[3] * b[2];
    const S cross2 = a[3] * b[1] - a[1] * b[3];
    const S cross3 = a[1] * b[2] - a[2] * b[1];
    r.c_[1] = a[0] * b[1] + b[0] * a[1] + cross1.times_i();
    r.c_[2] = a[0] * b[2] + b[0] * a[2] + cross2.times_i();
    r.c_[3] = a[0] * b[3] + b[0] * a[3] + cross3.times_i();
    return r;
  }
  PauliElement& operator*=(const PauliElement& o) { return *this = *this * o; }
  friend bool operator==(const PauliElement&, const PauliElement&) = default;

 private:
  std::array<S, 4> c_{};
};

using ImpurityElement = PauliElement<GaussianRational>;
using KondoElement = PauliElement<KondoScalar>;

}  // namespace hierflow
