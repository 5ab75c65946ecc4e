#pragma once

// Numeric analysis of the discrete flow l^{(h-1)} = beta(l^{(h)}).

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierflow/beta_map.hpp"

namespace hierflow {

enum class Termination { MaxSteps, Converged, Diverged };
std::string to_string(Termination t);

struct FlowOptions {
  double converge_step = 1e-14;
  double diverge_norm = 1e6;
};

/// points[n] is the coupling vector at scale h = -n.
struct Trajectory {
  std::vector<std::vector<double>> points;
  Termination reason = Termination::MaxSteps;
};

Trajectory iterate_flow(const CompiledBeta& beta, const std::vector<double>& start, int max_steps,
                        const FlowOptions& options = {});

enum class Stability { Stable, Unstable, MarginalMixed };
std::string to_string(Stability s);

/// Behaviour of the map along an eigendirection with modulus 1:
/// x' = x + q x^2 + O(x^3) in the coordinate along `direction`.
struct MarginalDirection {
  std::vector<double> direction;
  double quadratic_coefficient = 0.0;
  /// +1 if the point attracts from the +direction side, -1 from the - side, 0 if undecided.
  int attracting_side = 0;
};

struct FixedPointReport {
  std::vector<double> location;
  double residual = 0.0;
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> moduli;
  Stability classification = Stability::Unstable;
  std::vector<MarginalDirection> marginal;
  int seeds = 0;

  nlohmann::ordered_json to_json() const;
};

struct AbandonedSeed {
  std::vector<double> seed;
  std::string reason;
};

struct FixedPointSearch {
  std::vector<FixedPointReport> points;
  std::vector<AbandonedSeed> abandoned;

  nlohmann::ordered_json to_json() const;
};

struct NewtonOptions {
  int max_iterations = 100;
  int max_halvings = 20;
  double dedup_distance = 1e-8;
  double marginal_band = 1e-9;
};

FixedPointSearch find_fixed_points(const CompiledBeta& beta, const std::vector<std::vector<double>>& seeds,
                                   double tol, const NewtonOptions& options = {});

FixedPointReport stability(const CompiledBeta& beta, const std::vector<double>& point,
                           const NewtonOptions& options = {});

/// Regular grid of seeds over [lo, hi] along the first `axes` coordinates,
/// remaining coordinates zero.
std::vector<std::vector<double>> seed_grid(std::size_t dimension, std::size_t axes, double lo, double hi,
                                           int per_axis);

enum class Relevance { Relevant, Marginal, Irrelevant };
std::string to_string(Relevance r);

struct PowerCounting {
  Rational exponent;
  Relevance relevance;
};

/// exponent = log2(replication) - field_count * gamma.
PowerCounting classify_power_counting(int replication, const Rational& gamma, int field_count);

struct GridSpec {
  int axis_i = 0;
  int axis_j = 1;
  double lo_i = -1, hi_i = 1;
  double lo_j = -1, hi_j = 1;
  int resolution = 50;
  std::vector<double> fixed_values;
};

struct GridRow {
  double li, lj;
  double dir_i, dir_j;
  double log10_mag;
};

/// Rows in row-major order: l_j outer, l_i inner. A zero displacement gives
/// direction (0,0) and log10_mag = -inf; a singular point gives NaN.
std::vector<GridRow> vector_field_grid(const CompiledBeta& beta, const GridSpec& spec);
std::vector<GridRow> vector_field_grid_serial(const CompiledBeta& beta, const GridSpec& spec);

/// True if on the grid lines nearest to `point` (one per axis) some displacement
/// component changes sign between adjacent samples within `cells` of the point.
struct BracketResult {
  bool along_i = false;
  bool along_j = false;
};
BracketResult brackets_fixed_point(const std::vector<GridRow>& rows, const GridSpec& spec, double pi, double pj,
                                   int cells = 2);

}  // namespace hierflow
