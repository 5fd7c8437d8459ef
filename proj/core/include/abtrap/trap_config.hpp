#pragma once

#include <stdexcept>
#include <string>

namespace abtrap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical parameters in natural units (hbar = 1).  The solenoid enters
/// only through the dimensionless flux alpha = mu omega_0 a^2 / 2.
struct TrapConfig {
  double mu = 1.0;
  double omega_c = 0.0;
  double omega_P = 1.0;
  double a = 0.0;
  double alpha = 0.0;

  /// omega_0 = 2 alpha / (mu a^2); zero for a flux line (a = 0).
  double omega_0() const noexcept { return a > 0.0 ? 2.0 * alpha / (mu * a * a) : 0.0; }
  /// sqrt(omega_P^2 + omega_c^2 / 4)
  double omega_tilde() const noexcept;
  /// Slow mode sqrt(omega_P^2 + omega_c^2/4) - omega_c/2, computed without cancellation.
  double omega_minus() const noexcept;
  /// Reduced-model frequency omega_P^2 / omega_c.
  double omega_star() const;

  /// Throws ConfigError naming the violated condition.
  void validate() const;

  static TrapConfig from_solenoid(double mu, double omega_c, double omega_P, double a, double omega_0);
};

}  // namespace abtrap
