#pragma once

// Free fermions on a small Fock space by exact diagonalization.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace hierflow {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Throws std::invalid_argument unless mu is square, 1 <= N <= 4 and Hermitian within 1e-12.
void check_mode_matrix(const ComplexMatrix& mu);

/// Jordan-Wigner operators on the 2^N dimensional Fock space.
struct FockOperators {
  int modes = 0;
  std::vector<ComplexMatrix> annihilation;
  std::vector<ComplexMatrix> creation;
  ComplexMatrix hamiltonian;
};

FockOperators build_fock_operators(const ComplexMatrix& mu);

/// Largest entry of {a_i, a_j^dag} - delta_ij and {a_i, a_j} over all i, j.
double anticommutator_error(const FockOperators& ops);

/// One factor a^{omega}_{mode}(time) of a time-ordered product.
struct FieldInsertion {
  bool creation = false;
  int mode = 0;
  double time = 0.0;
};

/// Thermal state e^{-beta H0}/Z with operators stored in the eigenbasis of H0.
class ThermalState {
 public:
  ThermalState(const ComplexMatrix& mu, double beta);

  int modes() const { return modes_; }
  double beta() const { return beta_; }

  /// <T(prod of insertions)> by dense trace.
  Complex time_ordered(const std::vector<FieldInsertion>& insertions) const;
  /// s_ij(t - tbar) = <T(a_i^-(t) a_j^+(tbar))> for all i, j.
  ComplexMatrix two_point(double t, double tbar) const;

 private:
  ComplexMatrix evolved(const ComplexMatrix& op, double t) const;

  int modes_;
  double beta_;
  Eigen::VectorXd energies_;
  Eigen::VectorXd weights_;
  std::vector<ComplexMatrix> annihilation_;
  std::vector<ComplexMatrix> creation_;
};

/// Dense-trace two-point function; beta in (0, 50], t and tbar in [0, beta).
ComplexMatrix thermal_two_point(const ComplexMatrix& mu, double beta, double t, double tbar);

/// Eigendecomposition form: tau >= 0 uses e^{-tau l}/(1+e^{-beta l}),
/// tau < 0 uses -e^{-(tau+beta) l}/(1+e^{-beta l}).
ComplexMatrix closed_form_two_point(const ComplexMatrix& mu, double beta, double tau);

/// Symmetric Matsubara sum over |n| frequencies, n in [-cutoff, cutoff-1], with the
/// 1/k0 and 1/k0^2 tails summed in closed form. tau = 0 is taken as 0+.
ComplexMatrix matsubara_two_point(const ComplexMatrix& mu, double beta, double tau, int cutoff);

/// (1/2) int_{-beta}^{beta} e^{i k0 tau} s(tau) dtau by composite Simpson on each half.
ComplexMatrix fourier_coefficient(const ComplexMatrix& mu, double beta, double k0, int panels);

struct WickComparison {
  Complex lhs;
  Complex rhs;
};

/// lhs = <T(prod_i a^-_{j_i}(t_i) a^+_{jbar_i}(tbar_i))> by dense trace,
/// rhs = det[s_{j_i, jbar_k}(t_i - tbar_k)].
WickComparison wick_check(const ComplexMatrix& mu, double beta, int n, const std::vector<double>& t,
                          const std::vector<double>& tbar, const std::vector<int>& j,
                          const std::vector<int>& jbar);

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng);

}  // namespace hierflow
