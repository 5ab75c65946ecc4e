#include "hierflow/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hierflow/fock.hpp"
#include "hierflow/gaussian.hpp"

namespace hierflow {
namespace {

using GP = GrassmannPolynomial<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

constexpr std::pair<Species, Spin> kPairs[] = {
    {Species::A, Spin::Up}, {Species::A, Spin::Down},        {Species::B, Spin::Up},
    {Species::B, Spin::Down}, {Species::Electron, Spin::Up}, {Species::Electron, Spin::Down}};

GeneratorId pair_generator(int slot, int pair, Conj c) {
  const auto [s, sp] = kPairs[pair];
  return GeneratorId::internal(slot, s, sp, c);
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  return Rational(num(rng), den(rng));
}

RationalMatrix random_matrix(int m, std::mt19937_64& rng) {
  RationalMatrix g(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
  for (auto& row : g) {
    for (auto& x : row) x = random_rational(rng);
  }
  return g;
}

PropagatorTable make_table(int slot, const RationalMatrix& g) {
  const int m = static_cast<int>(g.size());
  MonomialKey universe;
  for (int i = 0; i < m; ++i) {
    universe = universe | MonomialKey::single(pair_generator(slot, i, Conj::Minus)) |
               MonomialKey::single(pair_generator(slot, i, Conj::Plus));
  }
  PropagatorTable table(universe);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      table.set(pair_generator(slot, i, Conj::Minus), pair_generator(slot, j, Conj::Plus),
                g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  return table;
}

CheckResult exact_check(std::string name, long mismatches, long total) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = mismatches == 0;
  r.error = static_cast<double>(mismatches);
  r.tolerance = 0.0;
  r.detail = std::to_string(total - mismatches) + "/" + std::to_string(total) + " cases agree";
  return r;
}

CheckResult numeric_check(std::string name, double error, double tolerance, long cases) {
  CheckResult r;
  r.name = std::move(name);
  r.error = error;
  r.tolerance = tolerance;
  r.passed = std::isfinite(error) && error <= tolerance;
  r.detail = std::to_string(cases) + " cases";
  return r;
}

GP random_polynomial(const MonomialKey& over, int terms, std::mt19937_64& rng) {
  const std::vector<int> ords = over.ordinals();
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << ords.size()) - 1);
  GP p;
  for (int k = 0; k < terms; ++k) {
    const std::uint64_t bits = pick(rng);
    MonomialKey key;
    for (std::size_t b = 0; b < ords.size(); ++b) {
      if ((bits >> b & 1U) != 0) key = key | MonomialKey::single(ords[b]);
    }
    p += GP::monomial(key, random_rational(rng));
  }
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<CheckResult> verify_grassmann_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  std::vector<RationalMatrix> props;
  while (props.size() < 20) {
    const int m = 1 + static_cast<int>(props.size() % 4);
    RationalMatrix g = random_matrix(m, rng);
    if (determinant(g).is_zero()) continue;
    props.push_back(std::move(g));
  }

  long bad = 0;
  for (const auto& g : props) {
    if (integrate_polynomial(GP::one(), make_table(0, g)) != GP::one()) ++bad;
  }
  out.push_back(exact_check("grassmann.normalization", bad, static_cast<long>(props.size())));

  bad = 0;
  long total = 0;
  for (const auto& g : props) {
    const PropagatorTable table = make_table(0, g);
    const int m = static_cast<int>(g.size());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const GP p = GP::product_of({pair_generator(0, i, Conj::Minus), pair_generator(0, j, Conj::Plus)});
        ++total;
        if (integrate_polynomial(p, table) != GP(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) ++bad;
      }
    }
  }
  out.push_back(exact_check("grassmann.two_point", bad, total));

  bad = 0;
  total = 0;
  const MonomialKey ext = MonomialKey::single(GeneratorId::external(Species::A, Spin::Up, Conj::Minus));
  for (const auto& g : props) {
    const PropagatorTable table = make_table(0, g);
    const std::vector<int> ords = table.universe().ordinals();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ords.size()); ++bits) {
      MonomialKey key;
      for (std::size_t b = 0; b < ords.size(); ++b) {
        if ((bits >> b & 1U) != 0) key = key | MonomialKey::single(ords[b]);
      }
      for (const MonomialKey& k : {key, key | ext}) {
        const GP p = GP::monomial(k, Rational(1));
        ++total;
        if (integrate_polynomial(p, table) != berezin_integrate_oracle(p, table)) ++bad;
      }
    }
  }
  out.push_back(exact_check("grassmann.wick_vs_berezin", bad, total));

  bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 3;
    const RationalMatrix g1 = random_matrix(m, rng);
    const RationalMatrix g2 = random_matrix(m, rng);
    RationalMatrix sum = g1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += g2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const PropagatorTable t0 = make_table(0, sum);
    const PropagatorTable t1 = make_table(1, g1);
    const PropagatorTable t2 = make_table(2, g2);
    const MonomialKey over = t0.universe() | ext |
                             MonomialKey::single(GeneratorId::external(Species::B, Spin::Down, Conj::Plus));
    const GP f = random_polynomial(over, 8, rng);
    std::map<GeneratorId, GP> split;
    t0.universe().for_each([&](int o) {
      const GeneratorId gen = GeneratorId::from_ordinal(o);
      split.emplace(gen, GP::generator(gen.with_slot(1)) + GP::generator(gen.with_slot(2)));
    });
    const GP lhs = integrate_polynomial(f, t0);
    const GP rhs = integrate_polynomial(integrate_polynomial(substitute(f, split), t2), t1);
    if (lhs != rhs) ++bad;
  }
  out.push_back(exact_check("grassmann.addition", bad, 50));
  return out;
}

std::vector<CheckResult> verify_fock_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CheckResult> out;

  double err = 0.0;
  for (int n = 1; n <= 4; ++n) {
    err = std::max(err, anticommutator_error(build_fock_operators(random_hermitian(n, rng))));
  }
  out.push_back(numeric_check("fock.anticommutators", err, 1e-13, 4));

  std::vector<std::pair<ComplexMatrix, double>> cases;
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix mu = random_hermitian(1 + k % 3, rng);
    for (double beta : {1.0, 5.0}) cases.emplace_back(mu, beta);
  }

  double closed_err = 0.0;
  double matsubara_err = 0.0;
  double wick_err = 0.0;
  for (const auto& [mu, beta] : cases) {
    const ThermalState state(mu, beta);
    const double a = beta * unit(rng);
    const double b = beta * unit(rng);
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    for (auto [t, tbar] : {std::pair{hi, lo}, std::pair{lo, hi}, std::pair{a, a}}) {
      const ComplexMatrix dense = state.two_point(t, tbar);
      closed_err = std::max(closed_err, max_abs(dense - closed_form_two_point(mu, beta, t - tbar)));
      matsubara_err = std::max(matsubara_err, max_abs(dense - matsubara_two_point(mu, beta, t - tbar, 10000)));
    }

    const int n = static_cast<int>(mu.rows());
    std::uniform_int_distribution<int> mode(0, n - 1);
    std::vector<double> t(2), tbar(2);
    for (auto* v : {&t, &tbar}) {
      for (auto& x : *v) x = beta * unit(rng);
    }
    const auto w = wick_check(mu, beta, 2, t, tbar, {mode(rng), mode(rng)}, {mode(rng), mode(rng)});
    wick_err = std::max(wick_err, std::abs(w.lhs - w.rhs));
  }
  out.push_back(numeric_check("fock.closed_form", closed_err, 1e-10, static_cast<long>(cases.size()) * 3));
  out.push_back(numeric_check("fock.matsubara", matsubara_err, 1e-6, static_cast<long>(cases.size()) * 3));
  out.push_back(numeric_check("fock.wick_n2", wick_err, 1e-8, static_cast<long>(cases.size())));

  double wick3 = 0.0;
  for (int k = 0; k < 5; ++k) {
    const ComplexMatrix mu = random_hermitian(3, rng);
    std::vector<double> t(3), tbar(3);
    for (auto* v : {&t, &tbar}) {
      for (auto& x : *v) x = 2.0 * unit(rng);
    }
    const auto w = wick_check(mu, 2.0, 3, t, tbar, {0, 1, 2}, {2, 0, 1});
    wick3 = std::max(wick3, std::abs(w.lhs - w.rhs));
  }
  out.push_back(numeric_check("fock.wick_n3", wick3, 1e-8, 5));

  const ComplexMatrix zero = ComplexMatrix::Zero(1, 1);
  const double half_err = std::max(std::abs(thermal_two_point(zero, 1.0, 0.3, 0.3)(0, 0) - 0.5),
                                   std::abs(matsubara_two_point(zero, 1.0, 0.0, 10000)(0, 0) - 0.5));
  out.push_back(numeric_check("fock.equal_time_half", half_err, 1e-12, 2));

  ComplexMatrix small(2, 2);
  small << 0.1, Complex(0.02, 0.01), Complex(0.02, -0.01), -0.05;
  const ComplexMatrix jump =
      matsubara_two_point(small, 1.0, 1e-3, 100000) - matsubara_two_point(small, 1.0, -1e-3, 100000);
  out.push_back(numeric_check("fock.discontinuity", max_abs(jump - ComplexMatrix::Identity(2, 2)), 1e-4, 1));

  double fourier_err = 0.0;
  for (const auto& [mu, beta] : {cases[1], cases[4]}) {
    const auto n = mu.rows();
    for (int m = 0; m < 5; ++m) {
      const double k0 = 2.0 * std::numbers::pi / beta * (m + 0.5);
      const ComplexMatrix expected = (Complex(0.0, -k0) * ComplexMatrix::Identity(n, n) + mu).inverse();
      fourier_err = std::max(fourier_err, max_abs(fourier_coefficient(mu, beta, k0, 10000) - expected));
    }
  }
  out.push_back(numeric_check("fock.fourier", fourier_err, 1e-4, 10));
  return out;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "grassmann") return verify_grassmann_suite(seed);
  if (suite == "fock") return verify_fock_suite(seed);
  if (suite == "all") {
    auto out = verify_grassmann_suite(seed);
    for (auto& c : verify_fock_suite(seed)) out.push_back(std::move(c));
    return out;
  }
  throw std::invalid_argument("unknown suite '" + suite + "' (expected all, grassmann or fock)");
}

nlohmann::ordered_json checks_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json j;
  bool all = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"error", c.error},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  j["passed"] = all;
  j["checks"] = arr;
  return j;
}

}  // namespace hierflow
