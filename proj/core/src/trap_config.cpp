#include "abtrap/trap_config.hpp"

#include <cmath>

namespace abtrap {

double TrapConfig::omega_tilde() const noexcept { return std::hypot(omega_P, 0.5 * omega_c); }

double TrapConfig::omega_minus() const noexcept { return omega_P * omega_P / (omega_tilde() + 0.5 * omega_c); }

double TrapConfig::omega_star() const {
  if (!(omega_c > 0.0)) throw ConfigError("omega* needs omega_c > 0");
  return omega_P * omega_P / omega_c;
}

void TrapConfig::validate() const {
  if (!std::isfinite(mu) || !(mu > 0.0)) throw ConfigError("mu must be > 0");
  if (!std::isfinite(omega_P) || !(omega_P > 0.0)) throw ConfigError("omega_P must be > 0");
  if (!std::isfinite(omega_c) || omega_c < 0.0) throw ConfigError("omega_c must be >= 0");
  if (!std::isfinite(a) || a < 0.0) throw ConfigError("a must be >= 0");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
}

TrapConfig TrapConfig::from_solenoid(double mu, double omega_c, double omega_P, double a, double omega_0) {
  TrapConfig c{mu, omega_c, omega_P, a, 0.5 * mu * omega_0 * a * a};
  c.validate();
  return c;
}

}  // namespace abtrap
