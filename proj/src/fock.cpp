#include "hierflow/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hierflow {

void check_mode_matrix(const ComplexMatrix& mu) {
  if (mu.rows() != mu.cols() || mu.rows() < 1 || mu.rows() > 4) {
    throw std::invalid_argument("mode matrix must be square with 1 to 4 modes");
  }
  if ((mu - mu.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("mode matrix is not Hermitian");
}

FockOperators build_fock_operators(const ComplexMatrix& mu) {
  check_mode_matrix(mu);
  const int n = static_cast<int>(mu.rows());
  const int dim = 1 << n;
  FockOperators ops;
  ops.modes = n;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
      if ((s >> i & 1) == 0) continue;
      const int below = std::popcount(static_cast<unsigned>(s & ((1 << i) - 1)));
      a(s ^ (1 << i), s) = below % 2 == 0 ? 1.0 : -1.0;
    }
    ops.creation.push_back(a.adjoint());
    ops.annihilation.push_back(std::move(a));
  }
  ops.hamiltonian = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ops.hamiltonian += mu(i, j) * ops.creation[i] * ops.annihilation[j];
  }
  return ops;
}

double anticommutator_error(const FockOperators& ops) {
  const auto dim = ops.hamiltonian.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  double err = 0.0;
  for (int i = 0; i < ops.modes; ++i) {
    for (int j = 0; j < ops.modes; ++j) {
      const auto& ai = ops.annihilation[i];
      const auto& aj = ops.annihilation[j];
      const auto& cj = ops.creation[j];
      ComplexMatrix mixed = ai * cj + cj * ai;
      if (i == j) mixed -= id;
      err = std::max(err, mixed.cwiseAbs().maxCoeff());
      err = std::max(err, (ai * aj + aj * ai).cwiseAbs().maxCoeff());
    }
  }
  return err;
}

ThermalState::ThermalState(const ComplexMatrix& mu, double beta) : modes_(static_cast<int>(mu.rows())), beta_(beta) {
  if (!(beta > 0.0) || beta > 50.0) throw std::invalid_argument("beta must lie in (0, 50]");
  const FockOperators ops = build_fock_operators(mu);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(ops.hamiltonian);
  energies_ = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  const double e0 = energies_.minCoeff();
  weights_ = (-(beta * (energies_.array() - e0))).exp();
  weights_ /= weights_.sum();
  for (int i = 0; i < modes_; ++i) {
    annihilation_.push_back(v.adjoint() * ops.annihilation[i] * v);
    creation_.push_back(v.adjoint() * ops.creation[i] * v);
  }
}

ComplexMatrix ThermalState::evolved(const ComplexMatrix& op, double t) const {
  ComplexMatrix out = op;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) *= std::exp(t * (energies_[r] - energies_[c]));
  }
  return out;
}

Complex ThermalState::time_ordered(const std::vector<FieldInsertion>& insertions) const {
  std::vector<std::size_t> order(insertions.size());
  std::iota(order.begin(), order.end(), 0);
  auto before = [&](std::size_t x, std::size_t y) {
    const auto& a = insertions[x];
    const auto& b = insertions[y];
    if (a.time != b.time) return a.time > b.time;
    if (a.creation != b.creation) return !a.creation;
    return a.mode < b.mode;
  };
  int sign = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t k = i; k > 0 && before(order[k], order[k - 1]); --k) {
      std::swap(order[k], order[k - 1]);
      sign = -sign;
    }
  }
  const auto dim = energies_.size();
  ComplexMatrix product = ComplexMatrix::Identity(dim, dim);
  for (std::size_t idx : order) {
    const auto& f = insertions[idx];
    if (f.mode < 0 || f.mode >= modes_) throw std::invalid_argument("mode index out of range");
    product = product * evolved(f.creation ? creation_[f.mode] : annihilation_[f.mode], f.time);
  }
  Complex trace = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) trace += weights_[k] * product(k, k);
  return static_cast<double>(sign) * trace;
}

ComplexMatrix ThermalState::two_point(double t, double tbar) const {
  if (t < 0 || t >= beta_ || tbar < 0 || tbar >= beta_) throw std::invalid_argument("times must lie in [0, beta)");
  ComplexMatrix s(modes_, modes_);
  for (int i = 0; i < modes_; ++i) {
    for (int j = 0; j < modes_; ++j) s(i, j) = time_ordered({{false, i, t}, {true, j, tbar}});
  }
  return s;
}

ComplexMatrix thermal_two_point(const ComplexMatrix& mu, double beta, double t, double tbar) {
  return ThermalState(mu, beta).two_point(t, tbar);
}

ComplexMatrix closed_form_two_point(const ComplexMatrix& mu, double beta, double tau) {
  check_mode_matrix(mu);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mu);
  const auto& lambda = solver.eigenvalues();
  const auto& u = solver.eigenvectors();
  Eigen::VectorXcd d(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double occ = 1.0 / (1.0 + std::exp(-beta * lambda[k]));
    d[k] = tau >= 0 ? std::exp(-tau * lambda[k]) * occ : -std::exp(-(tau + beta) * lambda[k]) * occ;
  }
  return u * d.asDiagonal() * u.adjoint();
}

ComplexMatrix matsubara_two_point(const ComplexMatrix& mu, double beta, double tau, int cutoff) {
  check_mode_matrix(mu);
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
  if (!(tau > -beta && tau < beta)) throw std::invalid_argument("tau must lie in (-beta, beta)");
  const auto n = mu.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mu);
  const auto& lambda = solver.eigenvalues();
  const auto& u = solver.eigenvectors();
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
  for (int m = -cutoff; m < cutoff; ++m) {
    const double k0 = 2.0 * std::numbers::pi / beta * (m + 0.5);
    const Complex z(0.0, -k0);
    const Complex phase = std::exp(Complex(0.0, -k0 * tau));
    for (Eigen::Index k = 0; k < n; ++k) {
      sum[k] += phase * (1.0 / (z + lambda[k]) - 1.0 / z + lambda[k] / (z * z));
    }
  }
  const ComplexMatrix tail = u * (sum / beta).asDiagonal() * u.adjoint();
  const double sgn = tau >= 0 ? 1.0 : -1.0;
  return 0.5 * sgn * id + mu * ((beta - 2.0 * std::abs(tau)) / 4.0) + tail;
}

ComplexMatrix fourier_coefficient(const ComplexMatrix& mu, double beta, double k0, int panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("Simpson quadrature needs an even panel count");
  const ThermalState state(mu, beta);
  const auto n = mu.rows();
  auto s = [&](double tau) { return tau >= 0 ? state.two_point(tau, 0.0) : state.two_point(0.0, -tau); };
  const double h = beta / panels;
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (int half = 0; half < 2; ++half) {
    const double lo = half == 0 ? -beta : 0.0;
    for (int k = 0; k <= panels; ++k) {
      double tau = lo + k * h;
      // Endpoint limits taken from inside each half.
      if (half == 0 && k == 0) tau = std::nextafter(-beta, 0.0);
      if (half == 0 && k == panels) tau = -1e-300;
      if (half == 1 && k == panels) tau = std::nextafter(beta, 0.0);
      const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      total += (w * h / 3.0) * std::exp(Complex(0.0, k0 * tau)) * s(tau);
    }
  }
  return 0.5 * total;
}

WickComparison wick_check(const ComplexMatrix& mu, double beta, int n, const std::vector<double>& t,
                          const std::vector<double>& tbar, const std::vector<int>& j, const std::vector<int>& jbar) {
  if (n < 1 || n > 3) throw std::invalid_argument("wick_check supports 1 <= n <= 3");
  const auto un = static_cast<std::size_t>(n);
  if (t.size() != un || tbar.size() != un || j.size() != un || jbar.size() != un) {
    throw std::invalid_argument("wick_check: argument sizes must equal n");
  }
  std::vector<double> all(t);
  all.insert(all.end(), tbar.begin(), tbar.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("wick_check: times must be pairwise distinct");
  }
  const ThermalState state(mu, beta);
  std::vector<FieldInsertion> fields;
  for (std::size_t i = 0; i < un; ++i) {
    fields.push_back({false, j[i], t[i]});
    fields.push_back({true, jbar[i], tbar[i]});
  }
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t k = 0; k < un; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          state.time_ordered({{false, j[i], t[i]}, {true, jbar[k], tbar[k]}});
    }
  }
  return {state.time_ordered(fields), m.determinant()};
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = Complex(dist(rng), dist(rng));
  }
  return 0.5 * (a + a.adjoint());
}

}  // namespace hierflow
