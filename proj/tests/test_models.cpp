#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hierflow/models.hpp"

using namespace hierflow;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class C>
void dump(std::ostream& os, const std::string& model, const OperatorBasis<C>& basis) {
  for (const auto& [label, op] : basis.entries) os << model << " " << label << " = " << op.to_string() << "\n";
}

}  // namespace

TEST(Models, OperatorBasesMatchGolden) {
  std::ostringstream os;
  dump(os, "graphene", graphene_model().basis);
  dump(os, "kondo", kondo_model().basis);
  EXPECT_EQ(os.str(), read_file(std::string(HIERFLOW_GOLDEN_DIR) + "/operator_bases.txt"));
}

TEST(Models, BasisOperatorsAreEvenAndExternal) {
  const auto g = graphene_model();
  ASSERT_EQ(g.basis.size(), 7u);
  for (std::size_t i = 0; i < g.basis.size(); ++i) {
    EXPECT_TRUE(g.basis[i].all_degrees_even());
    EXPECT_EQ(g.basis[i].support().without(MonomialKey::slot_mask(kExternalSlot)), MonomialKey{});
    EXPECT_EQ(g.basis[i].terms().front().first.degree(), g.field_counts[i]);
  }
  const auto k = kondo_model();
  ASSERT_EQ(k.basis.size(), 2u);
  EXPECT_EQ(k.field_counts, (std::vector<int>{2, 4}));
}

TEST(Models, ScalingConstants) {
  const auto g = graphene_model();
  EXPECT_EQ(g.gamma, Rational(1));
  EXPECT_EQ(g.replication, 8);
  EXPECT_EQ(g.field_scale, Rational(1, 2));
  const auto k = kondo_model();
  EXPECT_EQ(k.gamma, Rational(1, 2));
  EXPECT_EQ(k.field_scale * k.field_scale, KondoElement(Rational(1, 2)));
}

TEST(Models, ProjectionRecoversCoefficients) {
  const auto g = graphene_model();
  GrassmannPolynomial<Rational> p;
  for (std::size_t i = 0; i < g.basis.size(); ++i) p += g.basis[i].scaled_left(Rational(static_cast<long>(i) - 3, 7));
  const auto [coeffs, residual] = project_onto_basis(p, g.basis);
  EXPECT_TRUE(residual.is_zero());
  for (std::size_t i = 0; i < coeffs.size(); ++i) EXPECT_EQ(coeffs[i], Rational(static_cast<long>(i) - 3, 7));
}

TEST(Models, ProjectionReportsResidual) {
  const auto g = graphene_model();
  const auto stray = GrassmannPolynomial<Rational>::product_of(
      {GeneratorId::external(Species::A, Spin::Up, Conj::Minus), GeneratorId::external(Species::A, Spin::Down, Conj::Minus)});
  const auto [coeffs, residual] = project_onto_basis(stray + g.basis[0], g.basis);
  EXPECT_EQ(coeffs[0], Rational(1));
  EXPECT_EQ(residual, stray);
}

TEST(Lattice, FermiPointsAreBandTouchings) {
  const auto& c = lattice_constants();
  EXPECT_NEAR(std::abs(omega(c.fermi_plus[0], c.fermi_plus[1])), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(omega(c.fermi_minus[0], c.fermi_minus[1])), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(omega(0, 0)), 3.0, 1e-15);
  const auto [lo, hi] = bands(0.3, -0.2);
  EXPECT_DOUBLE_EQ(lo, -hi);
}

TEST(Lattice, DualBasis) {
  const auto& c = lattice_constants();
  auto dot = [](const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[0] + a[1] * b[1]; };
  EXPECT_NEAR(dot(c.l1, c.g1), 2 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(dot(c.l1, c.g2), 0.0, 1e-12);
  EXPECT_NEAR(dot(c.l2, c.g2), 2 * std::numbers::pi, 1e-12);
}
