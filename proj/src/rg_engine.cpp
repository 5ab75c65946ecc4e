#include "hierflow/rg_engine.hpp"

#include <mutex>

#include "hierflow/errors.hpp"

namespace hierflow {

BetaMap rg_step_graphene(const GrapheneSpec& spec, StepDiagnostics* diagnostics) {
  const int child = spec.integrated_children.at(0);
  const auto images = scaling_substitution(spec, child);
  std::vector<GrassmannPolynomial<Rational>> scaled;
  for (const auto& [label, op] : spec.basis.entries) scaled.push_back(substitute(op, images));

  const auto integrand = exp_linear_combination(scaled);
  const auto integrated = integrate_polynomial(integrand, spec.propagator);
  const auto log = log_expansion(integrated);

  const BasisProjector<Rational> projector(spec.basis);
  const Rational replication(spec.replication);
  BetaMap beta;
  beta.model = spec.name;
  beta.dimension = spec.basis.size();
  beta.denominator = log.c0;
  beta.log_multiplier = replication;
  beta.components.assign(beta.dimension, RationalForm{});
  for (auto& c : beta.components) c.by_power.resize(log.terms.size() + 1);
  for (std::size_t k = 0; k < log.terms.size(); ++k) {
    auto [coeffs, residual] = projector.project(log.terms[k]);
    if (!residual.is_zero()) {
      throw SymmetryViolation("graphene step: order " + std::to_string(k + 1) + " leaves " +
                              std::to_string(residual.size()) + " monomials outside the basis span");
    }
    for (std::size_t i = 0; i < beta.dimension; ++i) {
      beta.components[i].by_power[k + 1] = coeffs[i].scaled_left(replication);
    }
  }
  for (auto& c : beta.components) {
    while (!c.by_power.empty() && c.by_power.back().is_zero()) c.by_power.pop_back();
  }
  if (diagnostics != nullptr) {
    diagnostics->integrand_terms = integrand.size();
    diagnostics->integrated_terms = integrated.size();
    diagnostics->log_order = log.terms.size();
  }
  return beta;
}

BetaMap rg_step_kondo(const KondoSpec& spec, StepDiagnostics* diagnostics) {
  using Poly = CouplingPolynomial<KondoElement>;
  using GP = GrassmannPolynomial<Poly>;
  GP integrand = GP::one();
  for (int child : spec.integrated_children) {
    const auto images = scaling_substitution(spec, child);
    GP w = GP::one();
    for (std::size_t i = 0; i < spec.basis.size(); ++i) {
      w += with_coupling(substitute(spec.basis[i], images), static_cast<int>(i));
    }
    integrand *= w;
  }
  const GP integrated = integrate_polynomial(integrand, spec.propagator);

  const Poly normalization = integrated.constant_term();
  RationalPolynomial c;
  try {
    c = normalization.map_coefficients([](const KondoElement& e) {
      if (!e.is_scalar()) throw std::domain_error("impurity-dependent constant " + e.to_string());
      return require_rational(e[0]);
    });
  } catch (const std::domain_error& err) {
    throw SymmetryViolation(std::string("kondo step: normalization is not a real scalar: ") + err.what());
  }

  const BasisProjector<KondoElement> projector(spec.basis);
  auto [coeffs, residual] = projector.project(integrated - GP(normalization));
  if (!residual.is_zero()) {
    throw SymmetryViolation("kondo step: " + std::to_string(residual.size()) +
                            " monomials outside the basis span");
  }
  BetaMap beta;
  beta.model = spec.name;
  beta.dimension = spec.basis.size();
  beta.denominator = c;
  beta.log_multiplier = Rational(1);
  for (std::size_t i = 0; i < beta.dimension; ++i) {
    RationalPolynomial n;
    try {
      n = coeffs[i].map_coefficients([](const KondoScalar& s) { return require_rational(s); });
    } catch (const std::domain_error& err) {
      throw SymmetryViolation(std::string("kondo step: non-rational coupling: ") + err.what());
    }
    beta.components.push_back(RationalForm{{RationalPolynomial{}, n}});
  }
  if (diagnostics != nullptr) {
    diagnostics->integrand_terms = integrand.size();
    diagnostics->integrated_terms = integrated.size();
    diagnostics->log_order = 1;
  }
  return beta;
}

BetaMap compute_beta(const std::string& model) {
  if (model == "graphene") return rg_step_graphene(graphene_model());
  if (model == "kondo") return rg_step_kondo(kondo_model());
  throw std::invalid_argument("unknown model '" + model + "'");
}

const BetaMap& beta_for(const std::string& model) {
  static std::mutex mutex;
  static std::map<std::string, BetaMap> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(model);
  if (it == cache.end()) it = cache.emplace(model, compute_beta(model)).first;
  return it->second;
}

}  // namespace hierflow
