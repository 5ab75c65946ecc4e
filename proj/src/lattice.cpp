#include <cmath>
#include <numbers>

#include "hierflow/models.hpp"

namespace hierflow {

const LatticeConstants& lattice_constants() {
  using std::numbers::pi;
  static const double r3 = std::sqrt(3.0);
  static const LatticeConstants c{
      {1.5, r3 / 2},
      {1.5, -r3 / 2},
      {1.0, 0.0},
      {-0.5, r3 / 2},
      {-0.5, -r3 / 2},
      {2 * pi / 3, 2 * pi / r3},
      {2 * pi / 3, -2 * pi / r3},
      {2 * pi / 3, 2 * pi / (3 * r3)},
      {2 * pi / 3, -2 * pi / (3 * r3)},
      1.5,
  };
  return c;
}

std::complex<double> omega(double kx, double ky) {
  return 1.0 + 2.0 * std::polar(1.0, -1.5 * kx) * std::cos(std::sqrt(3.0) / 2 * ky);
}

std::pair<double, double> bands(double kx, double ky) {
  const double m = std::abs(omega(kx, ky));
  return {-m, m};
}

}  // namespace hierflow
