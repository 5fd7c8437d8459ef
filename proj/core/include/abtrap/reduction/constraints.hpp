#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "abtrap/algebra/phase_space.hpp"

namespace abtrap::reduction {

using algebra::RationalFunction;

/// Sign of the Levi-Civita component eps_12.  Every symbolic builder takes
/// it explicitly; results that are written with eps are the same in both,
/// component-wise results flip sign.
enum class Orientation { standard = 1, reversed = -1 };

int epsilon(Orientation orientation, int i, int j);
const char* to_string(Orientation orientation);

/// Which vector potentials enter the mechanical momentum.
enum class TrapLimit {
  full,              ///< uniform field and solenoid flux
  no_uniform_field,  ///< omega_c = 0: flux only
  no_flux,           ///< omega_0 = 0: ordinary combined trap
};

const char* to_string(TrapLimit limit);

/// Ordered list of constraint functions with a provenance label.
class ConstraintSet {
 public:
  /// Throws std::invalid_argument for an empty or repeated list.
  ConstraintSet(std::vector<RationalFunction> constraints, std::string provenance);

  const std::vector<RationalFunction>& constraints() const noexcept { return constraints_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  const RationalFunction& operator[](std::size_t i) const { return constraints_[i]; }

 private:
  std::vector<RationalFunction> constraints_;
  std::string provenance_;
};

RationalFunction rho_squared();

/// Component i (0 or 1) of the mechanical momentum
///   p_i + (mu omega_c / 2) eps_ij x_j + (mu omega_0 a^2 / 2) eps_ij x_j / rho^2
/// with the terms switched off by `limit`.
RationalFunction mechanical_momentum(int i, Orientation orientation, TrapLimit limit);

/// Vanishing-kinetic-energy constraints phi_i = mechanical momentum = 0.
ConstraintSet kinetic_constraints(Orientation orientation, TrapLimit limit);

/// Planar trap Hamiltonian  sum_i phi_i^2 / 2mu + mu omega_P^2 rho^2 / 2.
RationalFunction trap_hamiltonian(Orientation orientation, TrapLimit limit);

/// Canonical angular momentum eps_ij x_i p_j.
RationalFunction canonical_angular_momentum(Orientation orientation);

/// Rewrites omega_0 as 2 alpha / (mu a^2), so flux terms read in alpha.
RationalFunction in_terms_of_flux(const RationalFunction& f);

}  // namespace abtrap::reduction
