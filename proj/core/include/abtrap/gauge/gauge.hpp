#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "abtrap/algebra/rational_function.hpp"
#include "abtrap/reduction/constraints.hpp"
#include "abtrap/spectral/radial.hpp"
#include "abtrap/trap_config.hpp"

namespace abtrap::gauge {

using reduction::Orientation;

/// Vector potentials are stored as q A / c (hbar = 1), so the mechanical
/// momentum is p - A and the exterior circulation is 2 pi alpha eps_12.
enum class Region { inside, outside, confining };

const char* to_string(Region region);

using Point = std::array<double, 2>;

template <class T>
std::array<T, 2> vector_potential(Region region, const TrapConfig& c, Orientation o, T x1, T x2) {
  const double e = static_cast<int>(o);
  T weight;
  switch (region) {
    case Region::confining: weight = T(0.5 * c.mu * c.omega_c); break;
    case Region::inside: weight = T(0.5 * c.mu * c.omega_0()); break;
    case Region::outside: weight = T(c.alpha) / (x1 * x1 + x2 * x2); break;
  }
  // -w eps_ij x_j
  return {-weight * e * x2, weight * e * x1};
}

/// d1 A2 - d2 A1 by complex-step differentiation.
double curl(Region region, const TrapConfig& c, Orientation o, Point x);

/// chi = -eps_12 alpha atan2(x2, x1), cut along the negative x1 axis.
double gauge_function(const TrapConfig& c, Orientation o, Point x);
Point gauge_gradient(const TrapConfig& c, Orientation o, Point x);

class PointRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PureGaugeReport {
  std::size_t points = 0;
  double max_residual = 0.0;  ///< max |A_out + grad chi|
  double max_curl = 0.0;
  bool passed = false;
};

inline constexpr double kCutMargin = 1e-3;
inline constexpr double kPureGaugeTolerance = 1e-12;

/// Uniform samples in the annulus (a (1 + gap), outer a), angle kept off the
/// cut.  For a flux line the unit length stands in for a.
std::vector<Point> exterior_samples(const TrapConfig& c, std::size_t count, std::uint64_t seed, double outer = 10.0,
                                    double gap = 1e-3, double margin = kCutMargin);

PureGaugeReport check_pure_gauge(const TrapConfig& c, const std::vector<Point>& points,
                                 Orientation o = Orientation::standard, double margin = kCutMargin);

/// Counter-clockwise circulation of A_out around the circle of the given
/// radius divided by 2 pi, trapezoidal rule.
double circulation_over_2pi(const TrapConfig& c, double radius, std::size_t nodes = 10000,
                            Orientation o = Orientation::standard);

struct SpectrumGapReport {
  int m = 0;
  std::vector<double> flux;     ///< sector m with flux alpha
  std::vector<double> twisted;  ///< zero flux, centrifugal index shifted by s alpha
  double max_relative_gap = 0.0;
  bool passed = false;
};

inline constexpr double kSpectrumGapTolerance = 1e-10;

SpectrumGapReport gauge_spectrum_equivalence(const TrapConfig& c, int m, int k,
                                             const spectral::SolverOptions& options = {});

struct JzInvarianceReport {
  reduction::TrapLimit limit = reduction::TrapLimit::full;
  algebra::RationalFunction transformed;    ///< J_z' on the transformed surface
  algebra::RationalFunction untransformed;  ///< J_z on the original surface
  algebra::RationalFunction expected;       ///< alpha + mu omega_c rho^2 / 2
  bool passed = false;
};

/// Throws reduction::ReductionImpossible without a uniform field.
JzInvarianceReport gauge_invariance_of_jz(Orientation o, reduction::TrapLimit limit);
/// Limit picked from the numeric config.
JzInvarianceReport gauge_invariance_of_jz(const TrapConfig& c, Orientation o = Orientation::standard);

}  // namespace abtrap::gauge
