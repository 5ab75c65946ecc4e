#pragma once

// Hierarchical graphene and Kondo model definitions, and honeycomb lattice
// reference functions.

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hierflow/coupling_polynomial.hpp"
#include "hierflow/exact_linalg.hpp"
#include "hierflow/gaussian.hpp"
#include "hierflow/grassmann.hpp"
#include "hierflow/pauli.hpp"

namespace hierflow {

enum class Combination { ExpLog, Product };
enum class RingTag { Rational, PauliOverGaussian };

template <class C>
struct OperatorBasis {
  std::vector<std::pair<std::string, GrassmannPolynomial<C>>> entries;

  std::size_t size() const { return entries.size(); }
  const GrassmannPolynomial<C>& operator[](std::size_t i) const { return entries[i].second; }
};

template <class C>
struct ModelSpec {
  std::string name;
  Rational gamma;
  int replication = 1;
  Combination combination = Combination::ExpLog;
  RingTag ring = RingTag::Rational;
  /// 2^-gamma as an element of the coefficient ring.
  C field_scale;
  /// Child boxes whose internal fields are integrated jointly by `propagator`.
  std::vector<int> integrated_children;
  /// How many child boxes share the parent's external field; for ExpLog all
  /// replicas give the same integral and only the first is computed.
  int children = 1;
  PropagatorTable propagator;
  OperatorBasis<C> basis;
  /// Number of Grassmann fields (2l) of each basis operator.
  std::vector<int> field_counts;
};

using GrapheneSpec = ModelSpec<Rational>;
using KondoSpec = ModelSpec<KondoElement>;

GrapheneSpec graphene_model();
KondoSpec kondo_model();

/// The four (species, spin) labels of a graphene box and the two of a Kondo half-box.
std::vector<std::pair<Species, Spin>> graphene_labels();
std::vector<std::pair<Species, Spin>> kondo_labels();

// Coordinates of ring elements over their scalar field.
template <class C>
struct RingCoordinates;

template <>
struct RingCoordinates<Rational> {
  using Field = Rational;
  static constexpr int size = 1;
  static const Rational& get(const Rational& c, int) { return c; }
  static Rational embed(const Rational& f, int) { return f; }
};

template <class S>
struct RingCoordinates<PauliElement<S>> {
  using Field = S;
  static constexpr int size = 4;
  static const S& get(const PauliElement<S>& c, int k) { return c[k]; }
  static PauliElement<S> embed(const S& f, int k) {
    PauliElement<S> e;
    e[k] = f;
    return e;
  }
};

/// Exact decomposition p = sum_i c_i O_i + residual with scalar c_i.
template <class C>
class BasisProjector {
 public:
  using Coords = RingCoordinates<C>;
  using F = typename Coords::Field;

  explicit BasisProjector(const OperatorBasis<C>& basis) : basis_(basis) {
    for (const auto& [label, op] : basis.entries) {
      for (const auto& [key, coeff] : op.terms()) {
        for (int k = 0; k < Coords::size; ++k) {
          if (!Coords::get(coeff, k).is_zero()) rows_.emplace_back(key, k);
        }
      }
    }
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
    ExactMatrix<F> a(rows_.size(), std::vector<F>(basis.size(), F::zero()));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t i = 0; i < basis.size(); ++i) {
        a[r][i] = Coords::get(basis[i].coefficient(rows_[r].first), rows_[r].second);
      }
    }
    left_inverse_ = left_inverse(a, basis.size());
  }

  std::size_t rank() const { return basis_.size(); }

  /// Scalar coefficients; residual gets everything outside the span.
  std::pair<std::vector<F>, GrassmannPolynomial<C>> project(const GrassmannPolynomial<C>& p) const {
    std::vector<F> c(basis_.size(), F::zero());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const F& l = left_inverse_[i][r];
        if (l.is_zero()) continue;
        c[i] = c[i] + l * Coords::get(p.coefficient(rows_[r].first), rows_[r].second);
      }
    }
    GrassmannPolynomial<C> residual = p;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!c[i].is_zero()) residual -= basis_[i].scaled_left(C(c[i]));
    }
    return {c, residual};
  }

  /// Same for coefficients that are polynomials in the couplings.
  std::pair<std::vector<CouplingPolynomial<F>>, GrassmannPolynomial<CouplingPolynomial<C>>> project(
      const GrassmannPolynomial<CouplingPolynomial<C>>& p) const {
    std::vector<CouplingPolynomial<F>> c(basis_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto coeff = p.coefficient(rows_[r].first);
      if (coeff.is_zero()) continue;
      const int k = rows_[r].second;
      const auto x = coeff.map_coefficients([k](const C& v) { return Coords::get(v, k); });
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const F& l = left_inverse_[i][r];
        if (!l.is_zero()) c[i] += x.scaled_left(l);
      }
    }
    auto residual = p;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (c[i].is_zero()) continue;
      const auto ci = c[i].map_coefficients([](const F& f) { return C(f); });
      std::vector<typename GrassmannPolynomial<CouplingPolynomial<C>>::Term> op;
      for (const auto& [key, coeff] : basis_[i].terms()) op.emplace_back(key, ci.scaled_right(coeff));
      residual -= GrassmannPolynomial<CouplingPolynomial<C>>::from_terms(std::move(op));
    }
    return {c, residual};
  }

 private:
  OperatorBasis<C> basis_;
  std::vector<std::pair<MonomialKey, int>> rows_;
  ExactMatrix<F> left_inverse_;
};

template <class C>
auto project_onto_basis(const GrassmannPolynomial<C>& p, const OperatorBasis<C>& basis) {
  return BasisProjector<C>(basis).project(p);
}

// Honeycomb lattice reference values.
struct LatticeConstants {
  std::array<double, 2> l1, l2;
  std::array<double, 2> delta1, delta2, delta3;
  std::array<double, 2> g1, g2;
  std::array<double, 2> fermi_plus, fermi_minus;
  double fermi_velocity;
};

const LatticeConstants& lattice_constants();

/// 1 + 2 exp(-i 3/2 kx) cos(sqrt3/2 ky).
std::complex<double> omega(double kx, double ky);
/// (-|omega|, +|omega|).
std::pair<double, double> bands(double kx, double ky);

}  // namespace hierflow
