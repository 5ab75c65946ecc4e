#include "hierflow/beta_map.hpp"

#include <cmath>

#include "hierflow/errors.hpp"

namespace hierflow {

bool RationalForm::is_zero() const {
  return std::all_of(by_power.begin(), by_power.end(), [](const RationalPolynomial& p) { return p.is_zero(); });
}

std::size_t RationalForm::term_count() const {
  std::size_t n = 0;
  for (const auto& p : by_power) n += p.size();
  return n;
}

RationalForm RationalForm::derivative(int var, const RationalPolynomial& denominator_derivative) const {
  // d(N / D^k) = N' / D^k - k N D' / D^{k+1}
  RationalForm r;
  r.by_power.resize(by_power.size() + 1);
  for (std::size_t k = 0; k < by_power.size(); ++k) {
    r.by_power[k] += by_power[k].derivative(var);
    if (k > 0 && !by_power[k].is_zero()) {
      r.by_power[k + 1] -= (by_power[k] * denominator_derivative).scaled_left(Rational(static_cast<long>(k)));
    }
  }
  while (!r.by_power.empty() && r.by_power.back().is_zero()) r.by_power.pop_back();
  return r;
}

RationalPolynomial RationalForm::common_numerator(const RationalPolynomial& denominator) const {
  RationalPolynomial total;
  const std::size_t top = by_power.empty() ? 0 : by_power.size() - 1;
  for (std::size_t k = 0; k < by_power.size(); ++k) {
    total += by_power[k] * denominator.pow(static_cast<int>(top - k));
  }
  return total;
}

CompiledPolynomial::CompiledPolynomial(const RationalPolynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    std::array<std::uint8_t, kMaxCouplings> ex{};
    for (int v = 0; v < kMaxCouplings; ++v) ex[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e[v]);
    exponents_.push_back(ex);
    coefficients_.push_back(c.to_double());
  }
}

double CompiledPolynomial::evaluate(const std::vector<std::vector<double>>& powers) const {
  double total = 0.0;
  const std::size_t n = powers.size();
  for (std::size_t t = 0; t < coefficients_.size(); ++t) {
    double term = coefficients_[t];
    const auto& ex = exponents_[t];
    for (std::size_t v = 0; v < n; ++v) {
      if (ex[v] != 0) term *= powers[v][ex[v]];
    }
    total += term;
  }
  return total;
}

int CompiledPolynomial::max_degree(int var) const {
  int d = 0;
  for (const auto& ex : exponents_) d = std::max(d, static_cast<int>(ex[static_cast<std::size_t>(var)]));
  return d;
}

CompiledForm::CompiledForm(const RationalForm& form) {
  for (const auto& p : form.by_power) by_power_.emplace_back(p);
}

double CompiledForm::evaluate(const std::vector<std::vector<double>>& powers, double denominator) const {
  double total = 0.0;
  double scale = 1.0;
  const double inv = 1.0 / denominator;
  for (const auto& p : by_power_) {
    total += p.evaluate(powers) * scale;
    scale *= inv;
  }
  return total;
}

int CompiledForm::max_degree(int var) const {
  int d = 0;
  for (const auto& p : by_power_) d = std::max(d, p.max_degree(var));
  return d;
}

std::size_t BetaMap::term_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.term_count();
  return n;
}

std::vector<std::size_t> BetaMap::term_counts() const {
  std::vector<std::size_t> out;
  for (const auto& c : components) out.push_back(c.term_count());
  return out;
}

std::size_t BetaMap::common_denominator_term_count() const {
  std::size_t top = 0;
  for (const auto& c : components) top = std::max(top, c.by_power.size());
  std::size_t n = 0;
  for (const auto& c : components) {
    RationalForm padded = c;
    padded.by_power.resize(top);
    n += padded.common_numerator(denominator).size();
  }
  return n;
}

Rational BetaMap::denominator_exact(const std::vector<Rational>& l) const {
  return denominator.evaluate(l, [](const Rational& r) { return r; });
}

namespace {

Rational evaluate_form(const RationalForm& form, const std::vector<Rational>& l, const Rational& d) {
  Rational total;
  Rational scale(1);
  const Rational inv = d.inverse();
  for (const auto& p : form.by_power) {
    if (!p.is_zero()) total += p.evaluate(l, [](const Rational& r) { return r; }) * scale;
    scale *= inv;
  }
  return total;
}

}  // namespace

std::vector<Rational> BetaMap::evaluate_exact(const std::vector<Rational>& l) const {
  const Rational d = denominator_exact(l);
  if (d.is_zero()) throw SingularNormalization("beta: normalization vanishes");
  std::vector<Rational> out;
  for (const auto& c : components) out.push_back(evaluate_form(c, l, d));
  return out;
}

Jacobian BetaMap::jacobian() const {
  Jacobian j;
  j.dimension = dimension;
  j.denominator = denominator;
  j.entries.assign(dimension, std::vector<RationalForm>(dimension));
  for (std::size_t v = 0; v < dimension; ++v) {
    const RationalPolynomial dd = denominator.derivative(static_cast<int>(v));
    for (std::size_t i = 0; i < dimension; ++i) j.entries[i][v] = components[i].derivative(static_cast<int>(v), dd);
  }
  return j;
}

std::vector<std::vector<Rational>> Jacobian::evaluate_exact(const std::vector<Rational>& l) const {
  const Rational d = denominator.evaluate(l, [](const Rational& r) { return r; });
  if (d.is_zero()) throw SingularNormalization("jacobian: normalization vanishes");
  std::vector<std::vector<Rational>> out(dimension, std::vector<Rational>(dimension));
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t v = 0; v < dimension; ++v) out[i][v] = evaluate_form(entries[i][v], l, d);
  }
  return out;
}

nlohmann::ordered_json polynomial_to_json(const RationalPolynomial& p, std::size_t dimension) {
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    auto exps = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < dimension; ++v) exps.push_back(e[static_cast<int>(v)]);
    nlohmann::ordered_json t;
    t["exponents"] = exps;
    t["num"] = c.numerator_string();
    t["den"] = c.denominator_string();
    terms.push_back(t);
  }
  return terms;
}

RationalPolynomial polynomial_from_json(const nlohmann::ordered_json& j) {
  std::vector<RationalPolynomial::Term> terms;
  for (const auto& t : j) {
    Exponents e;
    const auto& exps = t.at("exponents");
    for (std::size_t v = 0; v < exps.size(); ++v) {
      e = e + Exponents::variable(static_cast<int>(v), exps[v].get<int>());
    }
    terms.emplace_back(e, Rational::from_parts(t.at("num").get<std::string>(), t.at("den").get<std::string>()));
  }
  return RationalPolynomial::from_terms(std::move(terms));
}

nlohmann::ordered_json BetaMap::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["dimension"] = dimension;
  j["log_multiplier"] = {{"num", log_multiplier.numerator_string()}, {"den", log_multiplier.denominator_string()}};
  j["denominator"] = polynomial_to_json(denominator, dimension);
  nlohmann::ordered_json comps;
  for (std::size_t i = 0; i < components.size(); ++i) {
    auto powers = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < components[i].by_power.size(); ++k) {
      nlohmann::ordered_json entry;
      entry["power"] = k;
      entry["terms"] = polynomial_to_json(components[i].by_power[k], dimension);
      powers.push_back(entry);
    }
    comps["l" + std::to_string(i)] = powers;
  }
  j["components"] = comps;
  nlohmann::ordered_json counts;
  for (std::size_t i = 0; i < components.size(); ++i) counts["l" + std::to_string(i)] = components[i].term_count();
  j["term_counts"] = counts;
  j["term_count"] = term_count();
  return j;
}

BetaMap BetaMap::from_json(const nlohmann::ordered_json& j) {
  BetaMap b;
  b.model = j.at("model").get<std::string>();
  b.dimension = j.at("dimension").get<std::size_t>();
  const auto& m = j.at("log_multiplier");
  b.log_multiplier = Rational::from_parts(m.at("num").get<std::string>(), m.at("den").get<std::string>());
  b.denominator = polynomial_from_json(j.at("denominator"));
  const auto& comps = j.at("components");
  for (std::size_t i = 0; i < b.dimension; ++i) {
    RationalForm form;
    for (const auto& entry : comps.at("l" + std::to_string(i))) {
      const auto k = entry.at("power").get<std::size_t>();
      if (form.by_power.size() <= k) form.by_power.resize(k + 1);
      form.by_power[k] = polynomial_from_json(entry.at("terms"));
    }
    b.components.push_back(std::move(form));
  }
  return b;
}

CompiledBeta::CompiledBeta(const BetaMap& beta)
    : dimension_(beta.dimension),
      max_degree_(beta.dimension, 0),
      denominator_(beta.denominator),
      log_multiplier_(beta.log_multiplier.to_double()) {
  const Jacobian jac = beta.jacobian();
  for (const auto& c : beta.components) components_.emplace_back(c);
  for (const auto& row : jac.entries) {
    for (const auto& e : row) jacobian_.emplace_back(e);
  }
  for (std::size_t v = 0; v < dimension_; ++v) {
    int d = denominator_.max_degree(static_cast<int>(v));
    for (const auto& c : components_) d = std::max(d, c.max_degree(static_cast<int>(v)));
    for (const auto& c : jacobian_) d = std::max(d, c.max_degree(static_cast<int>(v)));
    max_degree_[v] = d;
  }
}

std::vector<std::vector<double>> CompiledBeta::powers(const double* l) const {
  std::vector<std::vector<double>> p(dimension_);
  for (std::size_t v = 0; v < dimension_; ++v) {
    p[v].resize(static_cast<std::size_t>(max_degree_[v]) + 1);
    p[v][0] = 1.0;
    for (std::size_t e = 1; e < p[v].size(); ++e) p[v][e] = p[v][e - 1] * l[v];
  }
  return p;
}

void CompiledBeta::evaluate_into(const double* l, double* out) const {
  const auto p = powers(l);
  const double d = denominator_.evaluate(p);
  if (d == 0.0) throw SingularNormalization("beta: normalization vanishes");
  for (std::size_t i = 0; i < dimension_; ++i) out[i] = components_[i].evaluate(p, d);
}

std::vector<double> CompiledBeta::evaluate(const std::vector<double>& l) const {
  std::vector<double> out(dimension_);
  evaluate_into(l.data(), out.data());
  return out;
}

double CompiledBeta::denominator(const std::vector<double>& l) const { return denominator_.evaluate(powers(l.data())); }

std::vector<double> CompiledBeta::jacobian(const std::vector<double>& l) const {
  const auto p = powers(l.data());
  const double d = denominator_.evaluate(p);
  if (d == 0.0) throw SingularNormalization("jacobian: normalization vanishes");
  std::vector<double> out(dimension_ * dimension_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = jacobian_[k].evaluate(p, d);
  return out;
}

double CompiledBeta::log_constant(const std::vector<double>& l) const {
  return log_multiplier_ * std::log(denominator(l));
}

}  // namespace hierflow
