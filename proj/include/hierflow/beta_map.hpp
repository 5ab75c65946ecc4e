#pragma once

// Exact beta functions l' = beta(l) as rational functions sharing one
// denominator, with compiled floating-point views.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierflow/coupling_polynomial.hpp"

namespace hierflow {

/// sum_k by_power[k] / D^k for a denominator D held by the owner.
struct RationalForm {
  std::vector<RationalPolynomial> by_power;

  bool is_zero() const;
  std::size_t term_count() const;
  /// d/dl_var given D and dD/dl_var.
  RationalForm derivative(int var, const RationalPolynomial& denominator_derivative) const;
  /// Single numerator over D^top with top = by_power.size() - 1.
  RationalPolynomial common_numerator(const RationalPolynomial& denominator) const;

  friend bool operator==(const RationalForm&, const RationalForm&) = default;
};

class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const RationalPolynomial& p);
  /// `powers[v][e]` holds l_v^e.
  double evaluate(const std::vector<std::vector<double>>& powers) const;
  int max_degree(int var) const;

 private:
  std::vector<std::array<std::uint8_t, kMaxCouplings>> exponents_;
  std::vector<double> coefficients_;
};

class CompiledForm {
 public:
  CompiledForm() = default;
  explicit CompiledForm(const RationalForm& form);
  double evaluate(const std::vector<std::vector<double>>& powers, double denominator) const;
  int max_degree(int var) const;

 private:
  std::vector<CompiledPolynomial> by_power_;
};

struct Jacobian;

struct BetaMap {
  std::string model;
  std::size_t dimension = 0;
  RationalPolynomial denominator;
  std::vector<RationalForm> components;
  /// The step's additive constant is log_multiplier * log D(l).
  Rational log_multiplier;

  /// Expanded monomials over all numerators.
  std::size_t term_count() const;
  std::vector<std::size_t> term_counts() const;
  /// Monomials when each component is written as one numerator over D^K.
  std::size_t common_denominator_term_count() const;

  std::vector<Rational> evaluate_exact(const std::vector<Rational>& l) const;
  Rational denominator_exact(const std::vector<Rational>& l) const;
  Jacobian jacobian() const;

  nlohmann::ordered_json to_json() const;
  static BetaMap from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const BetaMap&, const BetaMap&) = default;
};

/// Exact partial derivatives d beta_i / d l_j, same denominator as the map.
struct Jacobian {
  std::size_t dimension = 0;
  RationalPolynomial denominator;
  std::vector<std::vector<RationalForm>> entries;

  std::vector<std::vector<Rational>> evaluate_exact(const std::vector<Rational>& l) const;
};

/// Floating-point evaluation of a BetaMap and its Jacobian.
class CompiledBeta {
 public:
  explicit CompiledBeta(const BetaMap& beta);

  std::size_t dimension() const { return dimension_; }
  /// Throws SingularNormalization when D(l) = 0.
  std::vector<double> evaluate(const std::vector<double>& l) const;
  void evaluate_into(const double* l, double* out) const;
  double denominator(const std::vector<double>& l) const;
  /// Row-major n x n.
  std::vector<double> jacobian(const std::vector<double>& l) const;
  double log_constant(const std::vector<double>& l) const;

 private:
  std::vector<std::vector<double>> powers(const double* l) const;

  std::size_t dimension_;
  std::vector<int> max_degree_;
  CompiledPolynomial denominator_;
  std::vector<CompiledForm> components_;
  std::vector<CompiledForm> jacobian_;
  double log_multiplier_;
};

nlohmann::ordered_json polynomial_to_json(const RationalPolynomial& p, std::size_t dimension);
RationalPolynomial polynomial_from_json(const nlohmann::ordered_json& j);

}  // namespace hierflow
