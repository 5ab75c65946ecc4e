#include <benchmark/benchmark.h>

#include "hierflow/flow.hpp"
#include "hierflow/gaussian.hpp"
#include "hierflow/rg_engine.hpp"

using namespace hierflow;

namespace {

// exp(sum l_i V_i) for the graphene step, before the Gaussian integration.
const GrassmannPolynomial<CouplingPolynomial<Rational>>& graphene_integrand() {
  static const auto integrand = [] {
    const GrapheneSpec spec = graphene_model();
    const auto images = scaling_substitution(spec, spec.integrated_children.at(0));
    std::vector<GrassmannPolynomial<Rational>> scaled;
    for (const auto& [label, op] : spec.basis.entries) scaled.push_back(substitute(op, images));
    return exp_linear_combination(scaled);
  }();
  return integrand;
}

const PropagatorTable& graphene_propagator() {
  static const PropagatorTable g = graphene_model().propagator;
  return g;
}

GridSpec graphene_grid(int resolution) {
  GridSpec g;
  g.lo_i = -0.5;
  g.hi_i = 1.5;
  g.lo_j = -0.5;
  g.hi_j = 0.5;
  g.resolution = resolution;
  return g;
}

void BM_IntegrateSerial(benchmark::State& state) {
  const auto& p = graphene_integrand();
  for (auto _ : state) benchmark::DoNotOptimize(integrate_polynomial_serial(p, graphene_propagator()));
  state.counters["terms"] = static_cast<double>(p.size());
}

void BM_IntegrateParallel(benchmark::State& state) {
  const auto& p = graphene_integrand();
  for (auto _ : state) benchmark::DoNotOptimize(integrate_polynomial(p, graphene_propagator()));
  state.counters["terms"] = static_cast<double>(p.size());
}

void BM_VectorFieldSerial(benchmark::State& state) {
  const CompiledBeta b(beta_for("graphene"));
  const GridSpec g = graphene_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vector_field_grid_serial(b, g));
}

void BM_VectorFieldParallel(benchmark::State& state) {
  const CompiledBeta b(beta_for("graphene"));
  const GridSpec g = graphene_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vector_field_grid(b, g));
}

}  // namespace

BENCHMARK(BM_IntegrateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VectorFieldSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VectorFieldParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
