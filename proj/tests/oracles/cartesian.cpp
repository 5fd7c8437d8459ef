#include "oracles/cartesian.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace abtrap::oracle {

namespace {

// Change of polar angle along a straight segment that avoids the origin.
double swept_angle(double x0, double y0, double x1, double y1) {
  double d = std::atan2(y1, x1) - std::atan2(y0, x0);
  if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

}  // namespace

CartesianSpectrum cartesian_spectrum(const TrapConfig& config, int grid, double half_width, int k) {
  using Complex = std::complex<double>;
  const int n = grid * grid;
  const double h = 2.0 * half_width / grid;
  const double b = 0.5 * config.mu * config.omega_c;
  const double hop = 0.5 / (config.mu * h * h);
  auto coord = [&](int i) { return -half_width + (i + 0.5) * h; };
  auto index = [&](int i, int j) { return i * grid + j; };

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = coord(i);
      const double y = coord(j);
      const int r = index(i, j);
      H(r, r) = 4.0 * hop + 0.5 * config.mu * config.omega_P * config.omega_P * (x * x + y * y);
      const int di[2] = {1, 0};
      const int dj[2] = {0, 1};
      for (int dir = 0; dir < 2; ++dir) {
        const int i2 = i + di[dir];
        const int j2 = j + dj[dir];
        if (i2 >= grid || j2 >= grid) continue;
        const double x2 = coord(i2);
        const double y2 = coord(j2);
        // integral of A.dl with A = b(-y, x) + alpha(-y, x)/rho^2
        const double theta = b * (x * y2 - x2 * y) + config.alpha * swept_angle(x, y, x2, y2);
        const int r2 = index(i2, j2);
        H(r, r2) = -hop * std::exp(Complex(0.0, -theta));
        H(r2, r) = std::conj(H(r, r2));
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  CartesianSpectrum out;
  for (int s = 0; s < k; ++s) {
    out.energies.push_back(solver.eigenvalues()(s));
    const Eigen::VectorXcd v = solver.eigenvectors().col(s);
    Complex lz = 0.0;
    for (int i = 1; i + 1 < grid; ++i) {
      for (int j = 1; j + 1 < grid; ++j) {
        const Complex dx = (v(index(i + 1, j)) - v(index(i - 1, j))) / (2.0 * h);
        const Complex dy = (v(index(i, j + 1)) - v(index(i, j - 1))) / (2.0 * h);
        lz += std::conj(v(index(i, j))) * Complex(0.0, -1.0) * (coord(i) * dy - coord(j) * dx);
      }
    }
    out.angular_momentum.push_back(lz.real());
  }
  return out;
}

}  // namespace abtrap::oracle
