#pragma once

#include <vector>

#include "abtrap/trap_config.hpp"

namespace abtrap::oracle {

struct CartesianSpectrum {
  std::vector<double> energies;
  /// <x p_y - y p_x> per eigenvector
  std::vector<double> angular_momentum;
};

/// Dense diagonalization of the planar Hamiltonian on a G x G cell-centred
/// grid over [-L, L]^2 with Dirichlet walls.  Uniform field and flux line
/// enter through exact Peierls phases; eps_12 = +1.
CartesianSpectrum cartesian_spectrum(const TrapConfig& config, int grid, double half_width, int k);

}  // namespace abtrap::oracle
