#include <gtest/gtest.h>

#include <cmath>

#include "hierflow/flow.hpp"
#include "hierflow/rg_engine.hpp"

using namespace hierflow;

namespace {

const CompiledBeta& kondo() {
  static const CompiledBeta b(beta_for("kondo"));
  return b;
}

const CompiledBeta& graphene() {
  static const CompiledBeta b(beta_for("graphene"));
  return b;
}

}  // namespace

TEST(Flow, ConsecutivePointsAreRelatedByBeta) {
  const auto t = iterate_flow(kondo(), {-0.2, 0.03}, 50);
  for (std::size_t n = 1; n < t.points.size(); ++n) EXPECT_EQ(t.points[n], kondo().evaluate(t.points[n - 1]));
}

TEST(Flow, FixedPointGivesConstantTrajectory) {
  const auto t = iterate_flow(graphene(), {1, 0, 0, 0, 0, 0, 0}, 100);
  EXPECT_EQ(t.reason, Termination::Converged);
  for (const auto& p : t.points) EXPECT_EQ(p, (std::vector<double>{1, 0, 0, 0, 0, 0, 0}));
}

TEST(Flow, KondoFromNegativeSideReachesNontrivialPoint) {
  const auto t = iterate_flow(kondo(), {-0.01, 0.0}, 500);
  EXPECT_EQ(t.reason, Termination::Converged);
  EXPECT_NEAR(t.points.back()[0], -0.78073, 1e-5);
  EXPECT_NEAR(t.points.back()[1], 0.052929, 1e-6);
}

TEST(Flow, KondoFromPositiveSideDecaysTowardOrigin) {
  const auto t = iterate_flow(kondo(), {0.01, 0.0}, 500);
  EXPECT_LT(std::hypot(t.points.back()[0], t.points.back()[1]), 0.01);
  EXPECT_GT(t.points.back()[0], 0.0);
}

TEST(Flow, DivergenceIsDetected) {
  FlowOptions opts;
  opts.diverge_norm = 10.0;
  const auto t = iterate_flow(graphene(), {-0.9, 0, 0, 0, 0, 0, 0}, 1000, opts);
  EXPECT_EQ(t.reason, Termination::Diverged);
  ASSERT_EQ(t.points.size(), 2u);
  EXPECT_NEAR(t.points[1][0], -18.0, 1e-9);
  EXPECT_EQ(iterate_flow(graphene(), {-1, 0, 0, 0, 0, 0, 0}, 10).reason, Termination::Diverged);
  EXPECT_ANY_THROW(iterate_flow(kondo(), {0.0}, 10));
  EXPECT_ANY_THROW(iterate_flow(kondo(), {0.0, 0.0}, 0));
}

TEST(FixedPoints, KondoHasTwoEquilibria) {
  const auto s = find_fixed_points(kondo(), seed_grid(2, 2, -1, 1, 9), 1e-12);
  ASSERT_EQ(s.points.size(), 2u);
  const auto& nontrivial = s.points[0];
  const auto& origin = s.points[1];
  const double x = 3 * nontrivial.location[1];
  EXPECT_NEAR(4 - 19 * x - 22 * x * x - 107 * x * x * x, 0.0, 1e-10);
  EXPECT_NEAR(nontrivial.location[0], -x * (1 + 5 * x) / (1 - 4 * x), 1e-9);
  EXPECT_EQ(nontrivial.classification, Stability::Stable);
  EXPECT_LT(std::abs(origin.location[0]) + std::abs(origin.location[1]), 1e-8);
  EXPECT_EQ(origin.classification, Stability::MarginalMixed);
  ASSERT_EQ(origin.marginal.size(), 1u);
  EXPECT_EQ(origin.marginal[0].attracting_side, 1);
  EXPECT_NEAR(origin.marginal[0].quadratic_coefficient, -1.0, 1e-5);
}

TEST(FixedPoints, GrapheneClassification) {
  const auto zero = stability(graphene(), std::vector<double>(7, 0.0));
  EXPECT_EQ(zero.classification, Stability::Unstable);
  EXPECT_NEAR(zero.moduli.front(), 2.0, 1e-12);
  EXPECT_NEAR(zero.moduli.back(), 1.0 / 32, 1e-12);
  const auto one = stability(graphene(), {1, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(one.classification, Stability::Stable);
  EXPECT_EQ(one.residual, 0.0);
}

TEST(FixedPoints, SeedGridShape) {
  const auto s = seed_grid(7, 2, 0.0, 1.0, 3);
  ASSERT_EQ(s.size(), 9u);
  EXPECT_EQ(s[4], (std::vector<double>{0.5, 0.5, 0, 0, 0, 0, 0}));
  EXPECT_ANY_THROW(seed_grid(2, 3, 0, 1, 2));
}

TEST(FixedPoints, JsonReport) {
  const auto j = stability(kondo(), {0.0, 0.0}).to_json();
  EXPECT_EQ(j["classification"], "marginal-mixed");
  EXPECT_EQ(j["moduli"].size(), 2u);
  EXPECT_EQ(j["marginal_directions"][0]["attracting_side"], "+");
}

TEST(PowerCounting, Exponents) {
  EXPECT_EQ(classify_power_counting(8, Rational(1), 2).exponent, Rational(1));
  EXPECT_EQ(classify_power_counting(8, Rational(1), 2).relevance, Relevance::Relevant);
  EXPECT_EQ(classify_power_counting(8, Rational(1), 4).relevance, Relevance::Irrelevant);
  EXPECT_EQ(classify_power_counting(2, Rational(1, 2), 2).relevance, Relevance::Marginal);
  EXPECT_EQ(classify_power_counting(2, Rational(1, 2), 4).exponent, Rational(-1));
  EXPECT_ANY_THROW(classify_power_counting(8, Rational(1), 3));
  EXPECT_ANY_THROW(classify_power_counting(6, Rational(1), 2));
}

TEST(VectorField, ParallelEqualsSerialAndIsRowMajor) {
  GridSpec g;
  g.lo_i = -1.0;
  g.hi_i = 0.3;
  g.lo_j = -0.05;
  g.hi_j = 0.1;
  g.resolution = 13;
  const auto par = vector_field_grid(kondo(), g);
  const auto ser = vector_field_grid_serial(kondo(), g);
  ASSERT_EQ(par.size(), 169u);
  for (std::size_t k = 0; k < par.size(); ++k) {
    EXPECT_EQ(par[k].li, ser[k].li);
    EXPECT_EQ(par[k].lj, ser[k].lj);
    EXPECT_EQ(par[k].dir_i, ser[k].dir_i);
    EXPECT_EQ(par[k].dir_j, ser[k].dir_j);
    EXPECT_EQ(par[k].log10_mag, ser[k].log10_mag);
  }
  EXPECT_EQ(par[1].lj, par[0].lj);
  EXPECT_GT(par[1].li, par[0].li);
  EXPECT_GT(par[13].lj, par[0].lj);
  for (const auto& r : par) EXPECT_NEAR(std::hypot(r.dir_i, r.dir_j), 1.0, 1e-12);
}

TEST(VectorField, ZeroDisplacementAndSingularPoints) {
  GridSpec g;
  g.lo_i = -1.0;
  g.hi_i = 1.0;
  g.lo_j = -1.0;
  g.hi_j = 1.0;
  g.resolution = 3;
  const auto rows = vector_field_grid(graphene(), g);
  const auto& centre = rows[4];
  EXPECT_EQ(centre.dir_i, 0.0);
  EXPECT_TRUE(std::isinf(centre.log10_mag) && centre.log10_mag < 0);
  const auto& right = rows[5];
  EXPECT_EQ(right.li, 1.0);
  EXPECT_NEAR(right.dir_i, 0.0, 0.0);
  EXPECT_TRUE(std::isnan(rows[3].dir_i));
}

TEST(VectorField, BadSpecsRejected) {
  GridSpec g;
  g.resolution = 1;
  EXPECT_ANY_THROW(vector_field_grid(kondo(), g));
  g.resolution = 5;
  g.axis_j = 0;
  EXPECT_ANY_THROW(vector_field_grid(kondo(), g));
  g.axis_j = 1;
  g.fixed_values = {0.0};
  EXPECT_ANY_THROW(vector_field_grid(kondo(), g));
}

TEST(VectorField, BracketsNontrivialKondoPoint) {
  GridSpec g;
  g.lo_i = -1.0;
  g.hi_i = 0.3;
  g.lo_j = -0.05;
  g.hi_j = 0.1;
  const auto rows = vector_field_grid(kondo(), g);
  const auto b = brackets_fixed_point(rows, g, -0.7807256660704317, 0.05292875274036917);
  EXPECT_TRUE(b.along_i);
  EXPECT_TRUE(b.along_j);
}
