#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abtrap/reduction/constraints.hpp"
#include "abtrap/secular/secular.hpp"
#include "abtrap/spectral/radial.hpp"
#include "abtrap/trap_config.hpp"

namespace abtrap::report {

/// Parse or validation failure; line 0 means the whole document.
class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(int line, std::string key, const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

struct SolverSettings {
  spectral::SolverOptions options;
  int states = 6;
  std::vector<int> sectors = {-2, -1, 0, 1, 2};
};

struct SecularSettings {
  secular::PaulDrive drive;
  secular::ClassicalState start;
  double periods = 21.0;       ///< duration in secular periods 2 pi / omega_P
  int steps_per_period = 40;   ///< RK4 steps per RF period
  int decimation = 1;          ///< RF periods per trajectory row
};

struct SweepSettings {
  std::vector<double> ratios = {10, 20, 50, 100};
  std::vector<double> alphas = {0.25};
  std::vector<int> sectors = {-2, -1, 0, 1, 2};
};

struct RunConfig {
  TrapConfig trap;
  reduction::Orientation orientation = reduction::Orientation::standard;
  SolverSettings solver;
  SweepSettings sweep;
  std::optional<SecularSettings> secular;
};

/// Sections [trap], [drive], [solver], [sweep]; keys before the first
/// section belong to [trap].  Unknown keys are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Every resolved field in a fixed order, independent of input layout.
std::string canonical_text(const RunConfig& config);
/// FNV-1a 64 of the canonical text, 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace abtrap::report
