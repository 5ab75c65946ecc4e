#pragma once

// Finite Grassmann algebras with coefficients in a (possibly noncommutative) ring.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hierflow/errors.hpp"
#include "hierflow/generator.hpp"
#include "hierflow/rational.hpp"

namespace hierflow {

template <class C>
concept CoefficientRing = requires(C a, C b) {
  { C::zero() } -> std::convertible_to<C>;
  { C::one() } -> std::convertible_to<C>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  C(Rational(1));
};

template <CoefficientRing C>
class GrassmannPolynomial {
 public:
  using Term = std::pair<MonomialKey, C>;

  GrassmannPolynomial() = default;
  GrassmannPolynomial(C constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.emplace_back(MonomialKey{}, std::move(constant));
  }

  static GrassmannPolynomial zero() { return {}; }
  static GrassmannPolynomial one() { return GrassmannPolynomial(C::one()); }
  static GrassmannPolynomial generator(const GeneratorId& g, C coeff = C::one()) {
    return monomial(MonomialKey::single(g), std::move(coeff));
  }
  static GrassmannPolynomial monomial(MonomialKey key, C coeff) {
    GrassmannPolynomial p;
    if (!coeff.is_zero()) p.terms_.emplace_back(key, std::move(coeff));
    return p;
  }
  /// coeff * g1 g2 ... gn, canonicalized; zero on a repeated generator.
  static GrassmannPolynomial product_of(const std::vector<GeneratorId>& gens, C coeff = C::one()) {
    std::vector<int> ords;
    ords.reserve(gens.size());
    for (const auto& g : gens) ords.push_back(g.ordinal());
    const int sign = sort_with_sign(ords);
    if (sign == 0) return {};
    MonomialKey key;
    for (int o : ords) key = key | MonomialKey::single(o);
    return monomial(key, sign > 0 ? std::move(coeff) : -coeff);
  }
  static GrassmannPolynomial from_terms(std::vector<Term> terms) {
    GrassmannPolynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C constant_term() const {
    if (!terms_.empty() && terms_[0].first.empty()) return terms_[0].second;
    return C::zero();
  }
  C coefficient(const MonomialKey& key) const {
    auto it = find(key);
    return it == terms_.end() ? C::zero() : it->second;
  }
  MonomialKey support() const {
    MonomialKey s;
    for (const auto& t : terms_) s = s | t.first;
    return s;
  }
  bool all_degrees_even() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.degree() % 2 == 0; });
  }
  bool all_degrees_odd() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.degree() % 2 == 1; });
  }

  GrassmannPolynomial operator-() const {
    GrassmannPolynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  GrassmannPolynomial& operator+=(const GrassmannPolynomial& o) { return *this = merge(*this, o, false); }
  GrassmannPolynomial& operator-=(const GrassmannPolynomial& o) { return *this = merge(*this, o, true); }
  friend GrassmannPolynomial operator+(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
    return merge(a, b, false);
  }
  friend GrassmannPolynomial operator-(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
    return merge(a, b, true);
  }

  friend GrassmannPolynomial operator*(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
    std::vector<Term> out;
    out.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        if (!ka.disjoint(kb)) continue;
        C c = ca * cb;
        if (product_sign(ka, kb) < 0) c = -c;
        out.emplace_back(ka | kb, std::move(c));
      }
    }
    return from_terms(std::move(out));
  }
  GrassmannPolynomial& operator*=(const GrassmannPolynomial& o) { return *this = *this * o; }

  GrassmannPolynomial scaled_left(const C& c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, x] : terms_) {
      C y = c * x;
      if (!y.is_zero()) out.emplace_back(k, std::move(y));
    }
    GrassmannPolynomial r;
    r.terms_ = std::move(out);
    return r;
  }
  GrassmannPolynomial scaled_right(const C& c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, x] : terms_) {
      C y = x * c;
      if (!y.is_zero()) out.emplace_back(k, std::move(y));
    }
    GrassmannPolynomial r;
    r.terms_ = std::move(out);
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename GrassmannPolynomial<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(k, f(c));
    return GrassmannPolynomial<D>::from_terms(std::move(out));
  }

  friend bool operator==(const GrassmannPolynomial&, const GrassmannPolynomial&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += "\n";
      out += "[" + c.to_string() + "] " + monomial_name(k);
    }
    return out;
  }

 private:
  typename std::vector<Term>::const_iterator find(const MonomialKey& key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, const MonomialKey& k) { return t.first < k; });
    return (it != terms_.end() && it->first == key) ? it : terms_.end();
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      const MonomialKey k = terms_[r].first;
      C sum = std::move(terms_[r].second);
      for (++r; r < terms_.size() && terms_[r].first == k; ++r) sum += terms_[r].second;
      if (!sum.is_zero()) terms_[w++] = Term(k, std::move(sum));
    }
    terms_.resize(w);
  }

  static GrassmannPolynomial merge(const GrassmannPolynomial& a, const GrassmannPolynomial& b, bool subtract) {
    GrassmannPolynomial r;
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

/// Sorted monomial with its sign, or nullopt if a generator repeats.
template <CoefficientRing C>
std::optional<std::pair<MonomialKey, C>> canonicalize(const std::vector<GeneratorId>& gens, C coeff) {
  auto p = GrassmannPolynomial<C>::product_of(gens, std::move(coeff));
  if (p.is_zero()) return std::nullopt;
  return p.terms()[0];
}

/// Homomorphic substitution g -> image(g) for each generator in `images`;
/// generators absent from the map are kept. Images must be odd.
template <CoefficientRing C>
GrassmannPolynomial<C> substitute(const GrassmannPolynomial<C>& p,
                                  const std::map<GeneratorId, GrassmannPolynomial<C>>& images) {
  for (const auto& [g, img] : images) {
    if (!img.all_degrees_odd()) {
      throw InvalidSubstitution("substitution image of " + g.name() + " is not odd");
    }
  }
  GrassmannPolynomial<C> result;
  for (const auto& [key, coeff] : p.terms()) {
    GrassmannPolynomial<C> prod(coeff);
    key.for_each([&](int o) {
      const GeneratorId g = GeneratorId::from_ordinal(o);
      auto it = images.find(g);
      prod *= it == images.end() ? GrassmannPolynomial<C>::generator(g) : it->second;
    });
    result += prod;
  }
  return result;
}

/// sum_n p^n / n!, for p even with zero constant term.
template <CoefficientRing C>
GrassmannPolynomial<C> exp_truncated(const GrassmannPolynomial<C>& p) {
  if (!p.constant_term().is_zero()) throw std::invalid_argument("exp_truncated: nonzero constant term");
  if (!p.all_degrees_even()) throw std::invalid_argument("exp_truncated: odd monomial");
  GrassmannPolynomial<C> total = GrassmannPolynomial<C>::one();
  GrassmannPolynomial<C> power = GrassmannPolynomial<C>::one();
  for (long n = 1;; ++n) {
    power = (power * p).scaled_right(C(Rational(1, n)));
    if (power.is_zero()) break;
    total += power;
  }
  return total;
}

/// log p = log c0 + sum_k (-1)^{k+1} P^k / k with P = (p - c0)/c0, over a field.
template <CoefficientRing C>
  requires requires(C c) { c.inverse(); }
std::pair<C, GrassmannPolynomial<C>> log_truncated(const GrassmannPolynomial<C>& p) {
  const C c0 = p.constant_term();
  if (c0.is_zero()) throw SingularNormalization("log_truncated: zero constant term");
  const GrassmannPolynomial<C> big_p = (p - GrassmannPolynomial<C>(c0)).scaled_left(c0.inverse());
  GrassmannPolynomial<C> series;
  GrassmannPolynomial<C> power = GrassmannPolynomial<C>::one();
  for (long k = 1;; ++k) {
    power *= big_p;
    if (power.is_zero()) break;
    series += power.scaled_right(C(Rational(k % 2 == 1 ? 1 : -1, k)));
  }
  return {c0, series};
}

/// Logarithm over a coefficient ring without inverses: p = c0 + Q gives
/// log p = log c0 + sum_k terms[k-1] / c0^k with terms[k-1] = (-1)^{k+1} Q^k / k.
template <CoefficientRing C>
struct LogExpansion {
  C c0;
  std::vector<GrassmannPolynomial<C>> terms;
};

template <CoefficientRing C>
LogExpansion<C> log_expansion(const GrassmannPolynomial<C>& p) {
  LogExpansion<C> out{p.constant_term(), {}};
  if (out.c0.is_zero()) throw SingularNormalization("log_expansion: zero constant term");
  const GrassmannPolynomial<C> q = p - GrassmannPolynomial<C>(out.c0);
  GrassmannPolynomial<C> power = GrassmannPolynomial<C>::one();
  for (long k = 1;; ++k) {
    power *= q;
    if (power.is_zero()) break;
    out.terms.push_back(power.scaled_right(C(Rational(k % 2 == 1 ? 1 : -1, k))));
  }
  return out;
}

}  // namespace hierflow
