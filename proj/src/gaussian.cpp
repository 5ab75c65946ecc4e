#include "hierflow/gaussian.hpp"

#include <string>

namespace hierflow {

void PropagatorTable::set(const GeneratorId& minus, const GeneratorId& plus, const Rational& value) {
  if (minus.conj != Conj::Minus || plus.conj != Conj::Plus) {
    throw std::invalid_argument("PropagatorTable: entries pair a minus with a plus generator");
  }
  if (!universe_.contains(minus.ordinal()) || !universe_.contains(plus.ordinal())) {
    throw std::invalid_argument("PropagatorTable: " + minus.name() + ", " + plus.name() +
                                " outside the integration block");
  }
  const auto k = std::make_pair(minus.ordinal(), plus.ordinal());
  if (value.is_zero()) {
    entries_.erase(k);
  } else {
    entries_[k] = value;
  }
}

Rational PropagatorTable::entry(int minus_ordinal, int plus_ordinal) const {
  auto it = entries_.find({minus_ordinal, plus_ordinal});
  return it == entries_.end() ? Rational() : it->second;
}

Rational PropagatorTable::pair_value(int x, int y) const {
  const bool x_minus = x % 2 == 0;
  const bool y_minus = y % 2 == 0;
  if (x_minus == y_minus) return {};
  if (x_minus) return entry(x, y);
  return -entry(y, x);
}

std::pair<std::vector<int>, std::vector<int>> PropagatorTable::paired_ordinals() const {
  std::vector<int> minus;
  std::vector<int> plus;
  universe_.for_each([&](int o) {
    if (o % 2 != 0) return;
    if (!universe_.contains(o + 1)) throw std::invalid_argument("PropagatorTable: universe not paired");
    minus.push_back(o);
    plus.push_back(o + 1);
  });
  if (2 * minus.size() != static_cast<std::size_t>(universe_.degree())) {
    throw std::invalid_argument("PropagatorTable: universe not paired");
  }
  return {minus, plus};
}

const Rational& WickEvaluator::value(const MonomialKey& internal) {
  if (auto it = cache_.find(internal); it != cache_.end()) return it->second;
  Rational total;
  const int degree = internal.degree();
  if (degree == 0) {
    total = Rational(1);
  } else if (degree % 2 == 0) {
    const std::vector<int> ords = internal.ordinals();
    const int first = ords[0];
    for (std::size_t j = 1; j < ords.size(); ++j) {
      const Rational a = table_->pair_value(first, ords[j]);
      if (a.is_zero()) continue;
      const MonomialKey rest = internal.without(MonomialKey::single(first) | MonomialKey::single(ords[j]));
      const Rational& sub = value(rest);
      if (sub.is_zero()) continue;
      // Moving ords[j] next to `first` passes j - 1 generators.
      if (j % 2 == 1) {
        total += a * sub;
      } else {
        total -= a * sub;
      }
    }
  }
  return cache_.emplace(internal, std::move(total)).first->second;
}

std::pair<MonomialKey, Rational> integrate_monomial_factor(const MonomialKey& key, WickEvaluator& wick,
                                                           const MonomialKey& universe) {
  const MonomialKey internal = key & universe;
  const MonomialKey external = key.without(universe);
  if (internal.degree() % 2 != 0) return {external, Rational()};
  const Rational& v = wick.value(internal);
  if (v.is_zero()) return {external, Rational()};
  return {external, split_sign(key, internal) < 0 ? -v : v};
}

GrassmannPolynomial<Rational> gaussian_density(const PropagatorTable& g) {
  const auto [minus, plus] = g.paired_ordinals();
  const std::size_t n = minus.size();
  ExactMatrix<Rational> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = g.entry(minus[i], plus[j]);
  }
  auto inv = inverse(m);
  if (!inv) throw SingularPropagator("gaussian_density: propagator is not invertible");
  // -psi^+_a A_ab psi^-_b = A_ab psi^-_b psi^+_a, with A = g^-1 indexed (plus, minus).
  std::vector<GrassmannPolynomial<Rational>::Term> quad;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& v = (*inv)[a][b];
      if (v.is_zero()) continue;
      const MonomialKey key = MonomialKey::single(minus[b]) | MonomialKey::single(plus[a]);
      const int sign = minus[b] < plus[a] ? 1 : -1;
      quad.emplace_back(key, sign > 0 ? v : -v);
    }
  }
  const auto exponent = GrassmannPolynomial<Rational>::from_terms(std::move(quad));
  return exp_truncated(exponent).scaled_left(determinant(m));
}

}  // namespace hierflow
