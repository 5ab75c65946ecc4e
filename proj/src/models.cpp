#include "hierflow/models.hpp"

namespace hierflow {
namespace {

constexpr Species A = Species::A;
constexpr Species B = Species::B;
constexpr Species E = Species::Electron;
constexpr Spin U = Spin::Up;
constexpr Spin D = Spin::Down;
constexpr Conj P = Conj::Plus;
constexpr Conj M = Conj::Minus;

GeneratorId x(Species s, Spin sp, Conj c) { return GeneratorId::external(s, sp, c); }

using GP = GrassmannPolynomial<Rational>;

GP sum_of_products(const std::vector<std::vector<GeneratorId>>& products) {
  GP total;
  for (const auto& gens : products) total += GP::product_of(gens);
  return total;
}

OperatorBasis<Rational> graphene_basis() {
  OperatorBasis<Rational> basis;
  basis.entries.emplace_back("O0", sum_of_products({
                                       {x(A, U, P), x(B, U, M)},
                                       {x(B, U, P), x(A, U, M)},
                                       {x(A, D, P), x(B, D, M)},
                                       {x(B, D, P), x(A, D, M)},
                                   }));
  basis.entries.emplace_back("O1", sum_of_products({
                                       {x(A, U, P), x(A, U, M), x(A, D, P), x(A, D, M)},
                                       {x(B, U, P), x(B, U, M), x(B, D, P), x(B, D, M)},
                                   }));
  basis.entries.emplace_back("O2", sum_of_products({
                                       {x(A, U, P), x(A, D, M), x(B, D, P), x(B, U, M)},
                                       {x(B, U, P), x(B, D, M), x(A, D, P), x(A, U, M)},
                                       {x(A, D, P), x(A, U, M), x(B, U, P), x(B, D, M)},
                                       {x(B, D, P), x(B, U, M), x(A, U, P), x(A, D, M)},
                                   }));
  basis.entries.emplace_back("O3", sum_of_products({
                                       {x(A, U, P), x(A, U, M), x(B, U, P), x(B, U, M)},
                                       {x(A, D, P), x(A, D, M), x(B, D, P), x(B, D, M)},
                                   }));
  basis.entries.emplace_back("O4", sum_of_products({
                                       {x(A, U, P), x(B, U, M), x(A, D, P), x(B, D, M)},
                                       {x(B, U, P), x(A, U, M), x(B, D, P), x(A, D, M)},
                                   }));
  basis.entries.emplace_back(
      "O5", sum_of_products({
                {x(A, U, P), x(A, U, M), x(A, D, P), x(B, U, M), x(B, U, P), x(B, D, M)},
                {x(A, D, P), x(A, D, M), x(A, U, P), x(B, D, M), x(B, D, P), x(B, U, M)},
                {x(B, U, P), x(B, U, M), x(B, D, P), x(A, U, M), x(A, U, P), x(A, D, M)},
                {x(B, D, P), x(B, D, M), x(B, U, P), x(A, D, M), x(A, D, P), x(A, U, M)},
            }));
  basis.entries.emplace_back(
      "O6", sum_of_products({
                {x(A, U, P), x(A, U, M), x(A, D, P), x(A, D, M), x(B, U, P), x(B, U, M), x(B, D, P), x(B, D, M)},
            }));
  return basis;
}

// psi^+_s S^(j)_{s,s'} psi^-_{s'} summed over spins, as an impurity-valued polynomial.
using KP = GrassmannPolynomial<KondoElement>;

const std::array<std::array<std::array<GaussianRational, 2>, 2>, 3>& pauli_matrices() {
  static const std::array<std::array<std::array<GaussianRational, 2>, 2>, 3> s = {{
      {{{GaussianRational(0), GaussianRational(1)}, {GaussianRational(1), GaussianRational(0)}}},
      {{{GaussianRational(0), GaussianRational(Rational(0), Rational(-1))},
        {GaussianRational(Rational(0), Rational(1)), GaussianRational(0)}}},
      {{{GaussianRational(1), GaussianRational(0)}, {GaussianRational(0), GaussianRational(-1)}}},
  }};
  return s;
}

KP spin_bilinear(int j, const KondoElement& impurity) {
  KP total;
  const Spin spins[2] = {U, D};
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      const GaussianRational& m = pauli_matrices()[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)]
                                                  [static_cast<std::size_t>(t)];
      if (m.is_zero()) continue;
      total += KP::product_of({x(E, spins[s], P), x(E, spins[t], M)}, KondoElement(KondoScalar(m)) * impurity);
    }
  }
  return total;
}

OperatorBasis<KondoElement> kondo_basis() {
  OperatorBasis<KondoElement> basis;
  const KondoElement half(KondoScalar(Rational(1, 2)));
  KP o0;
  KP spin_sum;
  for (int j = 0; j < 3; ++j) {
    o0 += spin_bilinear(j, KondoElement::basis(j + 1));
    spin_sum += spin_bilinear(j, KondoElement::one());
  }
  basis.entries.emplace_back("O0", o0.scaled_left(half));
  basis.entries.emplace_back("O1", (spin_sum * spin_sum).scaled_left(half));
  return basis;
}

}  // namespace

std::vector<std::pair<Species, Spin>> graphene_labels() { return {{A, U}, {A, D}, {B, U}, {B, D}}; }
std::vector<std::pair<Species, Spin>> kondo_labels() { return {{E, U}, {E, D}}; }

GrapheneSpec graphene_model() {
  GrapheneSpec spec;
  spec.name = "graphene";
  spec.gamma = Rational(1);
  spec.replication = 8;
  spec.children = 8;
  spec.combination = Combination::ExpLog;
  spec.ring = RingTag::Rational;
  spec.field_scale = Rational(1, 2);
  spec.integrated_children = {0};
  MonomialKey universe;
  for (auto [s, sp] : graphene_labels()) {
    universe = universe | MonomialKey::single(GeneratorId::internal(0, s, sp, M)) |
               MonomialKey::single(GeneratorId::internal(0, s, sp, P));
  }
  spec.propagator = PropagatorTable(universe);
  for (Spin sp : {U, D}) {
    spec.propagator.set(GeneratorId::internal(0, A, sp, M), GeneratorId::internal(0, B, sp, P), Rational(-1));
    spec.propagator.set(GeneratorId::internal(0, B, sp, M), GeneratorId::internal(0, A, sp, P), Rational(-1));
  }
  spec.basis = graphene_basis();
  spec.field_counts = {2, 4, 4, 4, 4, 6, 8};
  return spec;
}

KondoSpec kondo_model() {
  KondoSpec spec;
  spec.name = "kondo";
  spec.gamma = Rational(1, 2);
  spec.replication = 2;
  spec.children = 2;
  spec.combination = Combination::Product;
  spec.ring = RingTag::PauliOverGaussian;
  spec.field_scale = KondoElement(KondoScalar::half_power_of_two(1));
  spec.integrated_children = {0, 1};
  MonomialKey universe;
  for (int child = 0; child < 2; ++child) {
    for (auto [s, sp] : kondo_labels()) {
      universe = universe | MonomialKey::single(GeneratorId::internal(child, s, sp, M)) |
                 MonomialKey::single(GeneratorId::internal(child, s, sp, P));
    }
  }
  spec.propagator = PropagatorTable(universe);
  for (Spin sp : {U, D}) {
    spec.propagator.set(GeneratorId::internal(0, E, sp, M), GeneratorId::internal(1, E, sp, P), Rational(1));
    spec.propagator.set(GeneratorId::internal(1, E, sp, M), GeneratorId::internal(0, E, sp, P), Rational(-1));
  }
  spec.basis = kondo_basis();
  spec.field_counts = {2, 4};
  return spec;
}

}  // namespace hierflow
