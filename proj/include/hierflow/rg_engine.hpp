#pragma once

// One renormalization-group step computed symbolically in the couplings.

#include <map>
#include <string>
#include <vector>

#include "hierflow/beta_map.hpp"
#include "hierflow/models.hpp"

namespace hierflow {

/// psi_ext -> psi(child) + 2^-gamma psi_ext for every external generator of the model.
template <class C>
std::map<GeneratorId, GrassmannPolynomial<C>> scaling_substitution(const ModelSpec<C>& spec, int child) {
  std::map<GeneratorId, GrassmannPolynomial<C>> images;
  MonomialKey ext;
  for (const auto& [label, op] : spec.basis.entries) ext = ext | op.support();
  ext.for_each([&](int o) {
    const GeneratorId g = GeneratorId::from_ordinal(o);
    images.emplace(g, GrassmannPolynomial<C>::generator(g.with_slot(child)) +
                          GrassmannPolynomial<C>::generator(g, spec.field_scale));
  });
  return images;
}

/// Multiplies every coefficient by the coupling variable l_var.
template <class C>
GrassmannPolynomial<CouplingPolynomial<C>> with_coupling(const GrassmannPolynomial<C>& p, int var) {
  return p.map_coefficients(
      [var](const C& c) { return CouplingPolynomial<C>::monomial(Exponents::variable(var), c); });
}

/// exp(sum_i l_i V_i) for even V_i with commuting coefficients, expanded as
/// sum over n of l^n prod_i V_i^{n_i} / n_i!. Equal to exp_truncated of the sum.
template <class C>
GrassmannPolynomial<CouplingPolynomial<C>> exp_linear_combination(const std::vector<GrassmannPolynomial<C>>& v) {
  struct Entry {
    MonomialKey key;
    Exponents exps;
    C coeff;
  };
  std::vector<Entry> entries;
  const int n = static_cast<int>(v.size());
  auto dfs = [&](auto&& self, int i, Exponents e, const GrassmannPolynomial<C>& current) -> void {
    if (i == n) {
      for (const auto& [key, c] : current.terms()) entries.push_back({key, e, c});
      return;
    }
    GrassmannPolynomial<C> power = current;
    for (int k = 0;; ++k) {
      self(self, i + 1, e + Exponents::variable(i, k), power);
      power = (power * v[static_cast<std::size_t>(i)]).scaled_right(C(Rational(1, k + 1)));
      if (power.is_zero()) break;
    }
  };
  for (const auto& vi : v) {
    if (!vi.constant_term().is_zero() || !vi.all_degrees_even()) {
      throw std::invalid_argument("exp_linear_combination: operands must be even without constant term");
    }
  }
  dfs(dfs, 0, Exponents{}, GrassmannPolynomial<C>::one());
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.exps < b.exps;
  });
  std::vector<typename GrassmannPolynomial<CouplingPolynomial<C>>::Term> terms;
  for (std::size_t r = 0; r < entries.size();) {
    const MonomialKey key = entries[r].key;
    std::vector<typename CouplingPolynomial<C>::Term> poly;
    for (; r < entries.size() && entries[r].key == key; ++r) poly.emplace_back(entries[r].exps, entries[r].coeff);
    terms.emplace_back(key, CouplingPolynomial<C>::from_terms(std::move(poly)));
  }
  return GrassmannPolynomial<CouplingPolynomial<C>>::from_terms(std::move(terms));
}

struct StepDiagnostics {
  std::size_t integrand_terms = 0;
  std::size_t integrated_terms = 0;
  std::size_t log_order = 0;
};

BetaMap rg_step_graphene(const GrapheneSpec& spec, StepDiagnostics* diagnostics = nullptr);
BetaMap rg_step_kondo(const KondoSpec& spec, StepDiagnostics* diagnostics = nullptr);

/// Beta map of a model by name ("graphene" or "kondo"); throws std::invalid_argument otherwise.
BetaMap compute_beta(const std::string& model);

/// Cached per-process beta map for a model name.
const BetaMap& beta_for(const std::string& model);

}  // namespace hierflow
