#pragma once

// Multivariate polynomials in the formal couplings l0..l7.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hierflow/rational.hpp"

namespace hierflow {

inline constexpr int kMaxCouplings = 8;

/// Exponent vector packed one byte per variable, l0 in the most significant
/// byte, so integer order is lexicographic order.
class Exponents {
 public:
  constexpr Exponents() = default;
  constexpr explicit Exponents(std::uint64_t packed) : packed_(packed) {}

  static Exponents variable(int var, int power = 1) {
    check_var(var);
    if (power < 0 || power >= 128) throw std::overflow_error("Exponents: power out of range");
    return Exponents(static_cast<std::uint64_t>(power) << shift(var));
  }

  int operator[](int var) const { return static_cast<int>((packed_ >> shift(var)) & 0xffU); }
  std::uint64_t packed() const { return packed_; }
  bool is_constant() const { return packed_ == 0; }
  int total_degree() const {
    int d = 0;
    for (int v = 0; v < kMaxCouplings; ++v) d += (*this)[v];
    return d;
  }

  friend Exponents operator+(Exponents a, Exponents b) {
    const std::uint64_t sum = a.packed_ + b.packed_;
    if ((sum & 0x8080808080808080ULL) != 0) throw std::overflow_error("Exponents: degree overflow");
    return Exponents(sum);
  }
  Exponents lowered(int var) const { return Exponents(packed_ - (std::uint64_t{1} << shift(var))); }

  friend auto operator<=>(const Exponents&, const Exponents&) = default;

 private:
  static constexpr int shift(int var) { return 8 * (kMaxCouplings - 1 - var); }
  static void check_var(int var) {
    if (var < 0 || var >= kMaxCouplings) throw std::out_of_range("Exponents: variable index");
  }
  std::uint64_t packed_ = 0;
};

template <class C>
class CouplingPolynomial {
 public:
  using Term = std::pair<Exponents, C>;

  CouplingPolynomial() = default;
  CouplingPolynomial(C constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.emplace_back(Exponents{}, std::move(constant));
  }
  CouplingPolynomial(long constant) : CouplingPolynomial(C(constant)) {}  // NOLINT
  CouplingPolynomial(const Rational& constant)                             // NOLINT
    requires(!std::is_same_v<C, Rational>)
      : CouplingPolynomial(C(constant)) {}

  static CouplingPolynomial zero() { return {}; }
  static CouplingPolynomial one() { return CouplingPolynomial(C::one()); }
  static CouplingPolynomial variable(int var) {
    CouplingPolynomial p;
    p.terms_.emplace_back(Exponents::variable(var), C::one());
    return p;
  }
  static CouplingPolynomial monomial(Exponents e, C coeff) {
    CouplingPolynomial p;
    if (!coeff.is_zero()) p.terms_.emplace_back(e, std::move(coeff));
    return p;
  }
  /// Builds from unsorted terms, combining duplicates and dropping zeros.
  static CouplingPolynomial from_terms(std::vector<Term> terms) {
    CouplingPolynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_constant()); }

  C constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_constant()) return terms_[0].second;
    return C::zero();
  }
  C coefficient(Exponents e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponents k) { return t.first < k; });
    if (it != terms_.end() && it->first == e) return it->second;
    return C::zero();
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return d;
  }

  CouplingPolynomial operator-() const {
    CouplingPolynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  CouplingPolynomial& operator+=(const CouplingPolynomial& o) { return *this = merge(*this, o, false); }
  CouplingPolynomial& operator-=(const CouplingPolynomial& o) { return *this = merge(*this, o, true); }
  friend CouplingPolynomial operator+(const CouplingPolynomial& a, const CouplingPolynomial& b) {
    return merge(a, b, false);
  }
  friend CouplingPolynomial operator-(const CouplingPolynomial& a, const CouplingPolynomial& b) {
    return merge(a, b, true);
  }
  friend CouplingPolynomial operator*(const CouplingPolynomial& a, const CouplingPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled_right(b.terms_[0].second);
    if (a.is_constant()) return b.scaled_left(a.terms_[0].second);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.emplace_back(ea + eb, ca * cb);
    }
    return from_terms(std::move(out));
  }
  CouplingPolynomial& operator*=(const CouplingPolynomial& o) { return *this = *this * o; }

  /// c * p, coefficient multiplied on the left.
  CouplingPolynomial scaled_left(const C& c) const {
    CouplingPolynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, x] : terms_) {
      C y = c * x;
      if (!y.is_zero()) r.terms_.emplace_back(e, std::move(y));
    }
    return r;
  }
  /// p * c, coefficient multiplied on the right.
  CouplingPolynomial scaled_right(const C& c) const {
    CouplingPolynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, x] : terms_) {
      C y = x * c;
      if (!y.is_zero()) r.terms_.emplace_back(e, std::move(y));
    }
    return r;
  }

  CouplingPolynomial pow(int n) const {
    CouplingPolynomial r = one();
    for (int k = 0; k < n; ++k) r *= *this;
    return r;
  }

  CouplingPolynomial derivative(int var) const {
    std::vector<Term> out;
    for (const auto& [e, c] : terms_) {
      const int p = e[var];
      if (p == 0) continue;
      out.emplace_back(e.lowered(var), c * C(Rational(p)));
    }
    return from_terms(std::move(out));
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename CouplingPolynomial<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.emplace_back(e, f(c));
    return CouplingPolynomial<D>::from_terms(std::move(out));
  }

  /// Evaluates at a point of a commutative value type V (exact or floating).
  template <class V, class Conv>
  V evaluate(const std::vector<V>& point, Conv&& convert) const {
    V total = V(0);
    for (const auto& [e, c] : terms_) {
      V term = convert(c);
      for (int v = 0; v < static_cast<int>(point.size()); ++v) {
        for (int k = 0; k < e[v]; ++k) term = term * point[v];
      }
      total = total + term;
    }
    return total;
  }

  friend bool operator==(const CouplingPolynomial&, const CouplingPolynomial&) = default;

  std::string to_string(const std::string& symbol = "l") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      for (int v = 0; v < kMaxCouplings; ++v) {
        if (e[v] == 0) continue;
        out += "*" + symbol + std::to_string(v);
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
      }
    }
    return out;
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      Exponents e = terms_[r].first;
      C sum = std::move(terms_[r].second);
      for (++r; r < terms_.size() && terms_[r].first == e; ++r) sum += terms_[r].second;
      if (!sum.is_zero()) terms_[w++] = Term(e, std::move(sum));
    }
    terms_.resize(w);
  }

  static CouplingPolynomial merge(const CouplingPolynomial& a, const CouplingPolynomial& b, bool subtract) {
    CouplingPolynomial r;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        C s = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!s.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

using RationalPolynomial = CouplingPolynomial<Rational>;

}  // namespace hierflow
