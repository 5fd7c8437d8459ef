#include "abtrap/spectral/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace abtrap::spectral {

std::vector<ResidualEntry> residual_identity(const SectorResult& result, const TrapConfig& config, int s,
                                             double slack) {
  std::vector<ResidualEntry> out;
  for (const auto& st : result.states) {
    ResidualEntry e;
    e.m = result.m;
    e.n = st.n;
    e.energy = st.energy;
    e.rho2 = st.rho2;
    e.kinetic = st.kinetic;
    e.residual = result.m + s * (config.alpha + 0.5 * config.mu * config.omega_c * st.rho2);
    e.bound = 2.0 * std::sqrt(2.0 * config.mu * std::max(st.kinetic, 0.0) * st.rho2);
    e.within_bound = std::abs(e.residual) <= e.bound + slack;
    out.push_back(e);
  }
  return out;
}

int first_slow_sector(const TrapConfig& config, int s) {
  // s (m + s alpha) < 0: m > alpha for s = -1, m < -alpha for s = +1
  if (s < 0) return static_cast<int>(std::floor(config.alpha)) + 1;
  return static_cast<int>(std::ceil(-config.alpha)) - 1;
}

SlowBranchReport slow_branch_check(const TrapConfig& config, const SolverOptions& options, unsigned threads,
                                   int towers) {
  config.validate();
  if (!(config.omega_c >= 10.0 * config.omega_P)) {
    throw std::invalid_argument("slow-branch comparison needs omega_c / omega_P >= 10");
  }
  if (towers < 3) throw std::invalid_argument("need at least three sectors along the tower");
  SlowBranchReport r;
  r.ratio = config.omega_c / config.omega_P;
  const int start = first_slow_sector(config);
  const int step = kRotationSign < 0 ? 1 : -1;
  for (int j = 0; j < towers; ++j) r.sectors.push_back(start + step * j);
  const auto sectors = solve_sectors(config, r.sectors, 1, options, threads);
  for (const auto& sr : sectors) r.energies.push_back(sr.states.front().energy);

  std::vector<double> gaps;
  for (std::size_t j = 1; j < r.energies.size(); ++j) gaps.push_back(r.energies[j] - r.energies[j - 1]);
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  for (double g : gaps) {
    if (!(g > 0.0) || std::abs(g - mean) > 1e-2 * mean) {
      throw TowerIdentificationError("level spacings along the slow tower are not uniform");
    }
  }
  r.omega_minus = mean;
  r.omega_minus_exact = config.omega_minus();
  r.omega_star = config.omega_star();
  r.relative_gap = std::abs(r.omega_star - r.omega_minus) / r.omega_minus;
  r.contract = 2.0 / (r.ratio * r.ratio);
  r.passed = r.relative_gap <= r.contract;
  return r;
}

}  // namespace abtrap::spectral
