#pragma once

// Gaussian Grassmann integration: Wick rule and a Berezin-density oracle.

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hierflow/errors.hpp"
#include "hierflow/exact_linalg.hpp"
#include "hierflow/generator.hpp"
#include "hierflow/grassmann.hpp"
#include "hierflow/rational.hpp"

namespace hierflow {

/// Values of int P psi^-_x psi^+_y over an integration block of generators.
class PropagatorTable {
 public:
  PropagatorTable() = default;
  explicit PropagatorTable(MonomialKey universe) : universe_(universe) {}

  /// Sets int P psi^-_minus psi^+_plus = value. Both generators must lie in the
  /// universe and have the stated conjugations.
  void set(const GeneratorId& minus, const GeneratorId& plus, const Rational& value);

  const MonomialKey& universe() const { return universe_; }
  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }
  Rational entry(const GeneratorId& minus, const GeneratorId& plus) const {
    return entry(minus.ordinal(), plus.ordinal());
  }
  Rational entry(int minus_ordinal, int plus_ordinal) const;
  /// int P psi_x psi_y for arbitrary ordinals x, y.
  Rational pair_value(int x, int y) const;

  /// Minus generators of the universe in canonical order, and the matching
  /// conjugates. Throws if the universe is not made of conjugate pairs.
  std::pair<std::vector<int>, std::vector<int>> paired_ordinals() const;

 private:
  MonomialKey universe_;
  std::map<std::pair<int, int>, Rational> entries_;
};

/// Memoized signed sum over perfect matchings of internal generators.
class WickEvaluator {
 public:
  explicit WickEvaluator(const PropagatorTable& table) : table_(&table) {}
  /// int P of the canonical monomial `internal` (a subset of the universe).
  const Rational& value(const MonomialKey& internal);

 private:
  struct KeyHash {
    std::size_t operator()(const MonomialKey& k) const {
      return std::hash<std::uint64_t>{}(k.lo() * 0x9E3779B97F4A7C15ULL ^ k.hi());
    }
  };
  const PropagatorTable* table_;
  std::unordered_map<MonomialKey, Rational, KeyHash> cache_;
};

/// Integrates the internal generators of one monomial; returns the surviving
/// external monomial and the scalar factor (zero if nothing survives).
std::pair<MonomialKey, Rational> integrate_monomial_factor(const MonomialKey& key, WickEvaluator& wick,
                                                           const MonomialKey& universe);

template <CoefficientRing C>
GrassmannPolynomial<C> integrate_monomial(const MonomialKey& key, const C& coeff, const PropagatorTable& g) {
  WickEvaluator wick(g);
  auto [ext, factor] = integrate_monomial_factor(key, wick, g.universe());
  if (factor.is_zero()) return {};
  return GrassmannPolynomial<C>::monomial(ext, coeff * C(factor));
}

template <CoefficientRing C>
GrassmannPolynomial<C> integrate_polynomial_serial(const GrassmannPolynomial<C>& p, const PropagatorTable& g) {
  WickEvaluator wick(g);
  std::vector<typename GrassmannPolynomial<C>::Term> out;
  for (const auto& [key, coeff] : p.terms()) {
    auto [ext, factor] = integrate_monomial_factor(key, wick, g.universe());
    if (factor.is_zero()) continue;
    out.emplace_back(ext, factor.is_one() ? coeff : coeff * C(factor));
  }
  return GrassmannPolynomial<C>::from_terms(std::move(out));
}

/// OpenMP version of integrate_polynomial_serial; identical result.
template <CoefficientRing C>
GrassmannPolynomial<C> integrate_polynomial(const GrassmannPolynomial<C>& p, const PropagatorTable& g) {
  const auto& terms = p.terms();
  const long n = static_cast<long>(terms.size());
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (threads <= 1 || n < 256) return integrate_polynomial_serial(p, g);
  std::vector<std::vector<typename GrassmannPolynomial<C>::Term>> parts(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    WickEvaluator wick(g);
    auto& local = parts[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto& [key, coeff] = terms[static_cast<std::size_t>(i)];
      auto [ext, factor] = integrate_monomial_factor(key, wick, g.universe());
      if (factor.is_zero()) continue;
      local.emplace_back(ext, factor.is_one() ? coeff : coeff * C(factor));
    }
  }
  std::vector<typename GrassmannPolynomial<C>::Term> out;
  for (auto& part : parts) {
    for (auto& t : part) out.push_back(std::move(t));
  }
  return GrassmannPolynomial<C>::from_terms(std::move(out));
}

/// det(g) exp(-sum psi^+_a (g^-1)_ab psi^-_b) over the universe of g.
GrassmannPolynomial<Rational> gaussian_density(const PropagatorTable& g);

/// Integrates by multiplying with the explicit Gaussian density and taking
/// the coefficient of the top monomial of the universe.
template <CoefficientRing C>
GrassmannPolynomial<C> berezin_integrate_oracle(const GrassmannPolynomial<C>& p, const PropagatorTable& g) {
  const auto density = gaussian_density(g).map_coefficients([](const Rational& r) { return C(r); });
  const MonomialKey top = g.universe();
  const auto product = p * density;
  std::vector<typename GrassmannPolynomial<C>::Term> out;
  for (const auto& [key, coeff] : product.terms()) {
    if ((key & top) != top) continue;
    out.emplace_back(key.without(top), split_sign(key, top) < 0 ? -coeff : coeff);
  }
  return GrassmannPolynomial<C>::from_terms(std::move(out));
}

}  // namespace hierflow
