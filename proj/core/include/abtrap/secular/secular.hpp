#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "abtrap/algebra/rational_function.hpp"
#include "abtrap/trap_config.hpp"

namespace abtrap::secular {

class DriveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// RF quadrupole U cos(Omega~ t) with U = V (z^2 - rho^2/2) / (2 d^2); q is folded into V.
struct PaulDrive {
  double V = 0.0;
  double d = 1.0;
  double Omega_rf = 0.0;

  bool active() const noexcept { return V != 0.0; }
  /// Omega^2 = sqrt(2) |V| / (mu d^2)
  double secular_base(double mu) const;
  /// Omega^2 / (4 Omega~)
  double omega_P(double mu) const;
  /// Omega~ / Omega
  double adiabaticity(double mu) const;
  /// below 20 the secular picture is only rough
  bool marginal(double mu) const { return adiabaticity(mu) < 20.0; }
  /// Throws DriveError for d <= 0, Omega~ <= 0 or Omega~ / Omega < 10.
  void validate(double mu) const;

  static PaulDrive for_secular_frequency(double mu, double omega_P, double adiabaticity, double d = 1.0);
};

struct VeffReport {
  algebra::RationalFunction potential;  ///< U
  algebra::RationalFunction effective;  ///< grad U . grad U / (4 mu Omega~^2)
  algebra::RationalFunction expected;   ///< mu omega_P^2 (rho^2 + 4 z^2) / 2
  bool passed = false;
};

class NotQuadrupole : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symbols: x1, x2, z, V, d, mu, Omega_rf.
algebra::RationalFunction quadrupole_potential();
/// Checks any axially symmetric harmonic quadratic U; anything else throws NotQuadrupole.
VeffReport effective_potential_check(const algebra::RationalFunction& potential);
inline VeffReport effective_potential_check() { return effective_potential_check(quadrupole_potential()); }

struct ClassicalState {
  std::array<double, 3> x{};  ///< x1, x2, z
  std::array<double, 3> v{};
  double t = 0.0;

  bool exterior(double a) const noexcept { return x[0] * x[0] + x[1] * x[1] > a * a; }
};

enum class ForceModel {
  driven,    ///< full time-dependent RF force
  averaged,  ///< static effective potential
};

struct IntegrationOptions {
  double duration = 0.0;
  double dt = 0.0;
  /// keep every stride-th state
  std::size_t stride = 1;
  /// replace each kept state by the mean over its stride window
  bool average_window = false;
  ForceModel model = ForceModel::driven;
};

struct Trajectory {
  std::vector<ClassicalState> samples;
  double sample_interval = 0.0;
  /// Omega~ when the drive is on, else 0
  double drive_frequency = 0.0;
  /// max relative change of the RF-period averaged secular energy
  double secular_energy_drift = 0.0;
  bool left_exterior = false;
};

class StepTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest admissible step: 2 pi / (40 f) with f the fastest active frequency.
double max_step(const TrapConfig& config, const PaulDrive& drive);

Trajectory integrate_trajectory(const ClassicalState& start, const TrapConfig& config, const PaulDrive& drive,
                                const IntegrationOptions& options);

/// mu (x1 v2 - x2 v1) + eps x.A, equal to ... + mu omega_c rho^2 / 2 + alpha outside the solenoid.
double canonical_angular_momentum(const ClassicalState& s, const TrapConfig& config);

class NoSecularPeak : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FrequencyEstimate {
  double omega = 0.0;        ///< least-squares refit
  double uncertainty = 0.0;  ///< Cramer-Rao width of the refit
  double interpolated = 0.0; ///< quadratic peak interpolation on the padded periodogram
  double band_limit = 0.0;
  std::size_t samples = 0;
};

/// Dominant peak of x1(t) below Omega~/2 (Nyquist without drive).  Needs 20 periods.
FrequencyEstimate extract_secular_frequency(const Trajectory& trajectory, std::size_t component = 0);

}  // namespace abtrap::secular
