#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "hierflow/errors.hpp"
#include "hierflow/rg_engine.hpp"

using namespace hierflow;

namespace {

RationalPolynomial mono(long num, long den, std::initializer_list<std::pair<int, int>> powers) {
  Exponents e;
  for (auto [var, p] : powers) e = e + Exponents::variable(var, p);
  return RationalPolynomial::monomial(e, Rational(num, den));
}

std::vector<Rational> point(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(KondoStep, ClosedForm) {
  const BetaMap b = rg_step_kondo(kondo_model());
  EXPECT_EQ(b.denominator, mono(1, 1, {}) + mono(3, 2, {{0, 2}}) + mono(9, 1, {{1, 2}}));
  ASSERT_EQ(b.components.size(), 2u);
  EXPECT_EQ(b.components[0].by_power.at(1), mono(1, 1, {{0, 1}}) + mono(3, 1, {{0, 1}, {1, 1}}) - mono(1, 1, {{0, 2}}));
  EXPECT_EQ(b.components[1].by_power.at(1), mono(1, 2, {{1, 1}}) + mono(1, 8, {{0, 2}}));
}

TEST(KondoStep, JsonMatchesGolden) {
  std::ifstream in(std::string(HIERFLOW_GOLDEN_DIR) + "/kondo_beta.json");
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(beta_for("kondo").to_json().dump(2) + "\n", s.str());
}

TEST(BetaMap, JsonRoundTrip) {
  for (const char* model : {"kondo", "graphene"}) {
    const BetaMap& b = beta_for(model);
    EXPECT_EQ(BetaMap::from_json(b.to_json()), b) << model;
  }
}

TEST(BetaMap, CompiledAgreesWithExact) {
  const BetaMap& b = beta_for("graphene");
  const CompiledBeta c(b);
  const std::vector<Rational> x = {Rational(1, 3), Rational(-1, 5), Rational(1, 7), Rational(0), Rational(1, 4),
                                   Rational(-1, 9), Rational(1, 11)};
  std::vector<double> xd;
  for (const auto& r : x) xd.push_back(r.to_double());
  const auto exact = b.evaluate_exact(x);
  const auto approx = c.evaluate(xd);
  for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(approx[i], exact[i].to_double(), 1e-12);
  const auto je = b.jacobian().evaluate_exact(x);
  const auto jd = c.jacobian(xd);
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(jd[r * 7 + k], je[r][k].to_double(), 1e-10);
  }
}

TEST(BetaMap, JacobianMatchesFiniteDifferences) {
  const CompiledBeta c(beta_for("kondo"));
  const std::vector<double> x = {-0.3, 0.07};
  const auto j = c.jacobian(x);
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const auto fp = c.evaluate(xp), fm = c.evaluate(xm);
    for (int r = 0; r < 2; ++r) EXPECT_NEAR(j[r * 2 + k], (fp[r] - fm[r]) / (2 * h), 1e-8);
  }
}

TEST(GrapheneStep, EquilibriaAreExact) {
  const BetaMap& b = beta_for("graphene");
  const auto zero = point({0, 0, 0, 0, 0, 0, 0});
  const auto e0 = point({1, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(b.evaluate_exact(zero), zero);
  EXPECT_EQ(b.evaluate_exact(e0), e0);
}

TEST(GrapheneStep, LinearizationAtOrigin) {
  const auto j = beta_for("graphene").jacobian().evaluate_exact(point({0, 0, 0, 0, 0, 0, 0}));
  const std::vector<Rational> diag = {Rational(2), Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                      Rational(1, 8), Rational(1, 32)};
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(j[i][i], diag[i]);
    for (std::size_t k = 0; k < i; ++k) EXPECT_TRUE(j[i][k].is_zero()) << i << "," << k;
  }
}

TEST(GrapheneStep, StableAtUnitCoupling) {
  const auto j = beta_for("graphene").jacobian().evaluate_exact(point({1, 0, 0, 0, 0, 0, 0}));
  Eigen::MatrixXd m(7, 7);
  for (int r = 0; r < 7; ++r) {
    for (int k = 0; k < 7; ++k) m(r, k) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].to_double();
  }
  EXPECT_LT(Eigen::EigenSolver<Eigen::MatrixXd>(m).eigenvalues().cwiseAbs().maxCoeff(), 1.0);
}

TEST(GrapheneStep, L0SliceIsTwoOverOnePlus) {
  const BetaMap& b = beta_for("graphene");
  for (long n : {-3, 1, 2, 5}) {
    const Rational l0(n, 7);
    auto x = point({0, 0, 0, 0, 0, 0, 0});
    x[0] = l0;
    EXPECT_EQ(b.evaluate_exact(x)[0], Rational(2) * l0 / (Rational(1) + l0));
  }
}

TEST(GrapheneStep, Diagnostics) {
  StepDiagnostics d;
  const BetaMap b = rg_step_graphene(graphene_model(), &d);
  EXPECT_GT(d.integrand_terms, 0u);
  EXPECT_EQ(d.log_order, 4u);
  EXPECT_EQ(b, beta_for("graphene"));
}

TEST(RgEngine, UnknownModel) { EXPECT_THROW(compute_beta("nosuch"), std::invalid_argument); }

TEST(RgEngine, SingularNormalizationIsReported) {
  const CompiledBeta c(beta_for("graphene"));
  std::vector<double> x(7, 0.0);
  x[0] = -1.0;
  EXPECT_THROW(c.evaluate(x), SingularNormalization);
}
