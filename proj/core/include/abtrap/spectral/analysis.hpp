#pragma once

#include <stdexcept>
#include <vector>

#include "abtrap/spectral/radial.hpp"

namespace abtrap::spectral {

struct ResidualEntry {
  int m = 0;
  int n = 0;
  double energy = 0.0;
  double rho2 = 0.0;
  double kinetic = 0.0;
  /// m + s (alpha + mu omega_c <rho^2> / 2) = <eps_ij x_i pi_j>
  double residual = 0.0;
  /// 2 sqrt(2 mu <E_k> <rho^2>)
  double bound = 0.0;
  bool within_bound = false;
};

/// Residual of J_z = eps_ij x_i pi_j + mu omega_c rho^2 / 2 + alpha for every
/// state of a solved sector.  `slack` absorbs rounding in the comparison.
std::vector<ResidualEntry> residual_identity(const SectorResult& result, const TrapConfig& config,
                                             int s = kRotationSign, double slack = 1e-9);

class TowerIdentificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SlowBranchReport {
  double ratio = 0.0;  ///< omega_c / omega_P
  std::vector<int> sectors;
  std::vector<double> energies;  ///< lowest level in each sector
  double omega_minus = 0.0;      ///< mean level spacing along the tower
  double omega_minus_exact = 0.0;
  double omega_star = 0.0;
  double relative_gap = 0.0;  ///< |omega* - omega_-| / omega_-
  double contract = 0.0;      ///< 2 (omega_P / omega_c)^2
  bool passed = false;
};

/// Extracts omega_- from the n = 0 levels of `towers` consecutive sectors
/// on the slow side (s lambda < 0) and compares it with omega*.
SlowBranchReport slow_branch_check(const TrapConfig& config, const SolverOptions& options, unsigned threads = 1,
                                   int towers = 5);

/// First sector on the slow side of the spectrum: smallest m with s (m + s alpha) < 0.
int first_slow_sector(const TrapConfig& config, int s = kRotationSign);

}  // namespace abtrap::spectral
