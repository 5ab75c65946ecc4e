#include "hierflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "hierflow/errors.hpp"

namespace hierflow {
namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> displacement(const CompiledBeta& beta, const std::vector<double>& l) {
  std::vector<double> f = beta.evaluate(l);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= l[i];
  return f;
}

Eigen::MatrixXd jacobian_matrix(const CompiledBeta& beta, const std::vector<double>& l) {
  const auto n = static_cast<Eigen::Index>(beta.dimension());
  const std::vector<double> flat = beta.jacobian(l);
  Eigen::MatrixXd j(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) j(r, c) = flat[static_cast<std::size_t>(r * n + c)];
  }
  return j;
}

nlohmann::ordered_json vector_json(const std::vector<double>& v) {
  auto a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::MaxSteps: return "max_steps";
    case Termination::Converged: return "converged";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::MarginalMixed: return "marginal-mixed";
  }
  return "unknown";
}

std::string to_string(Relevance r) {
  switch (r) {
    case Relevance::Relevant: return "relevant";
    case Relevance::Marginal: return "marginal";
    case Relevance::Irrelevant: return "irrelevant";
  }
  return "unknown";
}

Trajectory iterate_flow(const CompiledBeta& beta, const std::vector<double>& start, int max_steps,
                        const FlowOptions& options) {
  if (max_steps < 1) throw std::invalid_argument("iterate_flow: max_steps must be at least 1");
  if (start.size() != beta.dimension()) throw std::invalid_argument("iterate_flow: dimension mismatch");
  Trajectory t;
  t.points.push_back(start);
  if (!all_finite(start)) {
    t.reason = Termination::Diverged;
    return t;
  }
  std::vector<double> next(start.size());
  for (int step = 0; step < max_steps; ++step) {
    const std::vector<double>& cur = t.points.back();
    try {
      beta.evaluate_into(cur.data(), next.data());
    } catch (const SingularNormalization&) {
      t.reason = Termination::Diverged;
      return t;
    }
    double step_norm = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) step_norm = std::max(step_norm, std::abs(next[i] - cur[i]));
    t.points.push_back(next);
    if (!all_finite(next) || inf_norm(next) > options.diverge_norm) {
      t.reason = Termination::Diverged;
      return t;
    }
    if (step_norm < options.converge_step) {
      t.reason = Termination::Converged;
      return t;
    }
  }
  t.reason = Termination::MaxSteps;
  return t;
}

FixedPointReport stability(const CompiledBeta& beta, const std::vector<double>& point, const NewtonOptions& options) {
  FixedPointReport r;
  r.location = point;
  r.residual = inf_norm(displacement(beta, point));
  const Eigen::MatrixXd j = jacobian_matrix(beta, point);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(j);
  const auto values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) order[static_cast<std::size_t>(k)] = k;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a].real() != values[b].real()) return values[a].real() > values[b].real();
    return values[a].imag() > values[b].imag();
  });

  bool any_marginal = false;
  bool all_inside = true;
  Eigen::EigenSolver<Eigen::MatrixXd> left_solver(j.transpose());
  for (Eigen::Index k : order) {
    const std::complex<double> lambda = values[k];
    const double modulus = std::abs(lambda);
    r.eigenvalues.push_back(lambda);
    r.moduli.push_back(modulus);
    if (std::abs(modulus - 1.0) <= options.marginal_band) {
      any_marginal = true;
      MarginalDirection m;
      const Eigen::VectorXd v_raw = solver.eigenvectors().col(k).real();
      Eigen::VectorXd v = v_raw.normalized();
      Eigen::Index big = 0;
      v.cwiseAbs().maxCoeff(&big);
      if (v[big] < 0) v = -v;
      m.direction.assign(v.data(), v.data() + v.size());
      if (std::abs(lambda.imag()) < 1e-12 && lambda.real() > 0) {
        const auto lv = left_solver.eigenvalues();
        Eigen::Index best = 0;
        for (Eigen::Index q = 1; q < lv.size(); ++q) {
          if (std::abs(lv[q] - lambda) < std::abs(lv[best] - lambda)) best = q;
        }
        Eigen::VectorXd w = left_solver.eigenvectors().col(best).real();
        w /= w.dot(v);
        const double h = 1e-4;
        std::vector<double> plus = point;
        std::vector<double> minus = point;
        for (std::size_t i = 0; i < point.size(); ++i) {
          plus[i] += h * v[static_cast<Eigen::Index>(i)];
          minus[i] -= h * v[static_cast<Eigen::Index>(i)];
        }
        const auto bp = beta.evaluate(plus);
        const auto b0 = beta.evaluate(point);
        const auto bm = beta.evaluate(minus);
        double second = 0.0;
        for (std::size_t i = 0; i < point.size(); ++i) {
          second += w[static_cast<Eigen::Index>(i)] * (bp[i] - 2 * b0[i] + bm[i]) / (h * h);
        }
        m.quadratic_coefficient = 0.5 * second;
        if (std::abs(m.quadratic_coefficient) > 1e-6) m.attracting_side = m.quadratic_coefficient < 0 ? 1 : -1;
      }
      r.marginal.push_back(std::move(m));
    } else if (modulus > 1.0) {
      all_inside = false;
    }
  }
  if (any_marginal) {
    r.classification = Stability::MarginalMixed;
  } else {
    r.classification = all_inside ? Stability::Stable : Stability::Unstable;
  }
  return r;
}

FixedPointSearch find_fixed_points(const CompiledBeta& beta, const std::vector<std::vector<double>>& seeds,
                                   double tol, const NewtonOptions& options) {
  if (!(tol > 0)) throw std::invalid_argument("find_fixed_points: tol must be positive");
  const auto n = static_cast<Eigen::Index>(beta.dimension());
  FixedPointSearch search;
  std::vector<std::pair<std::vector<double>, int>> found;
  for (const auto& seed : seeds) {
    std::vector<double> x = seed;
    std::string failure;
    bool converged = false;
    try {
      std::vector<double> f = displacement(beta, x);
      double fn = inf_norm(f);
      for (int it = 0; it <= options.max_iterations; ++it) {
        if (!std::isfinite(fn)) {
          failure = "non-finite residual";
          break;
        }
        // Past tol, keep polishing while the residual still drops.
        if (fn <= tol) converged = true;
        if (fn == 0.0) break;
        if (it == options.max_iterations) {
          failure = "iteration limit";
          break;
        }
        Eigen::MatrixXd jf = jacobian_matrix(beta, x) - Eigen::MatrixXd::Identity(n, n);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jf);
        if (!lu.isInvertible()) {
          failure = "singular Jacobian";
          break;
        }
        const Eigen::VectorXd delta = -lu.solve(Eigen::Map<const Eigen::VectorXd>(f.data(), n));
        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k <= options.max_halvings; ++k, t *= 0.5) {
          std::vector<double> y = x;
          for (Eigen::Index i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += t * delta[i];
          std::vector<double> fy;
          try {
            fy = displacement(beta, y);
          } catch (const SingularNormalization&) {
            continue;
          }
          const double fyn = inf_norm(fy);
          if (std::isfinite(fyn) && fyn < fn) {
            x = std::move(y);
            f = std::move(fy);
            fn = fyn;
            accepted = true;
            break;
          }
        }
        if (!accepted) {
          failure = "no decrease after step halving";
          break;
        }
      }
    } catch (const SingularNormalization&) {
      failure = "singular normalization";
    }
    if (!converged) {
      search.abandoned.push_back({seed, failure});
      continue;
    }
    auto it = std::find_if(found.begin(), found.end(), [&](const auto& p) {
      double d = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(p.first[i] - x[i]));
      return d <= options.dedup_distance;
    });
    if (it == found.end()) {
      found.emplace_back(x, 1);
    } else {
      ++it->second;
      if (inf_norm(displacement(beta, x)) < inf_norm(displacement(beta, it->first))) it->first = x;
    }
  }
  std::sort(found.begin(), found.end());
  for (const auto& [x, count] : found) {
    FixedPointReport r = stability(beta, x, options);
    r.seeds = count;
    search.points.push_back(std::move(r));
  }
  return search;
}

std::vector<std::vector<double>> seed_grid(std::size_t dimension, std::size_t axes, double lo, double hi,
                                           int per_axis) {
  if (per_axis < 1 || axes > dimension) throw std::invalid_argument("seed_grid: bad shape");
  std::vector<std::vector<double>> seeds;
  std::vector<int> idx(axes, 0);
  while (true) {
    std::vector<double> s(dimension, 0.0);
    for (std::size_t a = 0; a < axes; ++a) {
      s[a] = per_axis == 1 ? lo : lo + (hi - lo) * idx[a] / (per_axis - 1);
    }
    seeds.push_back(std::move(s));
    std::size_t a = 0;
    while (a < axes && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == axes) break;
  }
  return seeds;
}

PowerCounting classify_power_counting(int replication, const Rational& gamma, int field_count) {
  if (field_count < 2 || field_count % 2 != 0) {
    throw std::invalid_argument("classify_power_counting: field count must be even and at least 2");
  }
  if (replication < 1 || (replication & (replication - 1)) != 0) {
    throw std::invalid_argument("classify_power_counting: replication must be a power of two");
  }
  const long log2 = std::countr_zero(static_cast<unsigned>(replication));
  const Rational exponent = Rational(log2) - gamma * Rational(field_count);
  const Relevance rel = exponent.sign() > 0 ? Relevance::Relevant
                                            : (exponent.sign() == 0 ? Relevance::Marginal : Relevance::Irrelevant);
  return {exponent, rel};
}

namespace {

GridRow grid_row(const CompiledBeta& beta, const GridSpec& spec, int i, int j, std::vector<double>& l,
                 std::vector<double>& out) {
  const int n = spec.resolution;
  const double li = spec.lo_i + (spec.hi_i - spec.lo_i) * i / (n - 1);
  const double lj = spec.lo_j + (spec.hi_j - spec.lo_j) * j / (n - 1);
  l[static_cast<std::size_t>(spec.axis_i)] = li;
  l[static_cast<std::size_t>(spec.axis_j)] = lj;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    beta.evaluate_into(l.data(), out.data());
  } catch (const SingularNormalization&) {
    return {li, lj, nan, nan, nan};
  }
  const double di = out[static_cast<std::size_t>(spec.axis_i)] - li;
  const double dj = out[static_cast<std::size_t>(spec.axis_j)] - lj;
  const double mag = std::hypot(di, dj);
  if (mag == 0.0) return {li, lj, 0.0, 0.0, -std::numeric_limits<double>::infinity()};
  if (!std::isfinite(mag)) return {li, lj, nan, nan, nan};
  return {li, lj, di / mag, dj / mag, std::log10(mag)};
}

void check_grid(const CompiledBeta& beta, const GridSpec& spec) {
  if (spec.resolution < 2) throw std::invalid_argument("vector_field_grid: resolution must be at least 2");
  const auto n = static_cast<int>(beta.dimension());
  if (spec.axis_i < 0 || spec.axis_i >= n || spec.axis_j < 0 || spec.axis_j >= n || spec.axis_i == spec.axis_j) {
    throw std::invalid_argument("vector_field_grid: bad axes");
  }
  if (!spec.fixed_values.empty() && spec.fixed_values.size() != beta.dimension()) {
    throw std::invalid_argument("vector_field_grid: slice values must match the model dimension");
  }
  if (!std::isfinite(spec.lo_i) || !std::isfinite(spec.hi_i) || !std::isfinite(spec.lo_j) ||
      !std::isfinite(spec.hi_j)) {
    throw std::invalid_argument("vector_field_grid: ranges must be finite");
  }
}

std::vector<double> slice_base(const CompiledBeta& beta, const GridSpec& spec) {
  return spec.fixed_values.empty() ? std::vector<double>(beta.dimension(), 0.0) : spec.fixed_values;
}

}  // namespace

std::vector<GridRow> vector_field_grid_serial(const CompiledBeta& beta, const GridSpec& spec) {
  check_grid(beta, spec);
  const int n = spec.resolution;
  std::vector<GridRow> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<double> l = slice_base(beta, spec);
  std::vector<double> out(beta.dimension());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(j * n + i)] = grid_row(beta, spec, i, j, l, out);
  }
  return rows;
}

std::vector<GridRow> vector_field_grid(const CompiledBeta& beta, const GridSpec& spec) {
  check_grid(beta, spec);
  const int n = spec.resolution;
  const long total = static_cast<long>(n) * n;
  std::vector<GridRow> rows(static_cast<std::size_t>(total));
  const std::vector<double> base = slice_base(beta, spec);
#pragma omp parallel
  {
    std::vector<double> l = base;
    std::vector<double> out(beta.dimension());
#pragma omp for schedule(static)
    for (long k = 0; k < total; ++k) {
      rows[static_cast<std::size_t>(k)] = grid_row(beta, spec, static_cast<int>(k % n), static_cast<int>(k / n), l, out);
    }
  }
  return rows;
}

BracketResult brackets_fixed_point(const std::vector<GridRow>& rows, const GridSpec& spec, double pi, double pj,
                                   int cells) {
  const int n = spec.resolution;
  auto nearest = [n](double p, double lo, double hi) {
    const double t = (p - lo) / (hi - lo) * (n - 1);
    return std::clamp(static_cast<int>(std::lround(t)), 0, n - 1);
  };
  const int ci = nearest(pi, spec.lo_i, spec.hi_i);
  const int rj = nearest(pj, spec.lo_j, spec.hi_j);
  auto at = [&](int i, int j) -> const GridRow& { return rows[static_cast<std::size_t>(j * n + i)]; };
  auto flips = [](const GridRow& a, const GridRow& b) {
    return a.dir_i * b.dir_i <= 0.0 || a.dir_j * b.dir_j <= 0.0;
  };
  BracketResult r;
  for (int i = std::max(0, ci - cells); i < std::min(n - 1, ci + cells); ++i) {
    if (flips(at(i, rj), at(i + 1, rj))) r.along_i = true;
  }
  for (int j = std::max(0, rj - cells); j < std::min(n - 1, rj + cells); ++j) {
    if (flips(at(ci, j), at(ci, j + 1))) r.along_j = true;
  }
  return r;
}

nlohmann::ordered_json FixedPointReport::to_json() const {
  nlohmann::ordered_json j;
  j["location"] = vector_json(location);
  j["residual"] = residual;
  auto eig = nlohmann::ordered_json::array();
  for (const auto& e : eigenvalues) eig.push_back({{"re", e.real()}, {"im", e.imag()}});
  j["eigenvalues"] = eig;
  j["moduli"] = vector_json(moduli);
  j["classification"] = to_string(classification);
  auto marg = nlohmann::ordered_json::array();
  for (const auto& m : marginal) {
    nlohmann::ordered_json e;
    e["direction"] = vector_json(m.direction);
    e["quadratic_coefficient"] = m.quadratic_coefficient;
    e["attracting_side"] = m.attracting_side > 0 ? "+" : (m.attracting_side < 0 ? "-" : "undecided");
    marg.push_back(e);
  }
  j["marginal_directions"] = marg;
  j["seeds"] = seeds;
  return j;
}

nlohmann::ordered_json FixedPointSearch::to_json() const {
  nlohmann::ordered_json j;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : points) pts.push_back(p.to_json());
  j["fixed_points"] = pts;
  auto ab = nlohmann::ordered_json::array();
  for (const auto& a : abandoned) ab.push_back({{"seed", vector_json(a.seed)}, {"reason", a.reason}});
  j["abandoned_seeds"] = ab;
  return j;
}

}  // namespace hierflow
