#pragma once

#include <string>
#include <vector>

#include "abtrap/reduction/dirac.hpp"

namespace abtrap::reduction {

/// Oscillator left after the kinetic constraints are imposed.  All
/// quantities are symbolic in the trap parameters; hbar = 1.
struct ReducedModel {
  Orientation orientation = Orientation::standard;
  TrapLimit limit = TrapLimit::full;
  RationalFunction x;  ///< x1
  RationalFunction p;  ///< x2 / {x1, x2}_D, so that {x, p}_D = 1
  RationalFunction bracket_x1_x2;
  RationalFunction effective_mass;
  RationalFunction effective_frequency;
  /// H restricted to the surface, in x1, x2.
  RationalFunction surface_hamiltonian;
  /// Canonical J_z on the surface, flux written through alpha.
  RationalFunction surface_jz;
  /// Part of J_z that does not depend on the phase point.
  RationalFunction j_ab;
};

/// Reduces `h` on the surface of `cs`.  The restricted Hamiltonian must be
/// K (x1^2 + x2^2) with K free of x, and J_z on the surface must split into
/// a constant plus H / omega*.
ReducedModel reduce(const RationalFunction& h, const ConstraintSet& cs, Orientation orientation,
                    const algebra::Assumptions& assumptions = algebra::Assumptions::physical());

/// reduce(trap_hamiltonian, kinetic_constraints) for a given limit.
ReducedModel reduce_trap(Orientation orientation, TrapLimit limit);

/// Ladder spectrum of the reduced oscillator.
struct ReducedSpectrum {
  RationalFunction omega_star;
  RationalFunction j_ab;

  RationalFunction energy(unsigned n) const;
  RationalFunction canonical_jz(unsigned n) const;
  RationalFunction zero_point_jz() const { return canonical_jz(0); }

  /// Human-readable formulas for reports.
  static std::string annihilation_operator();
  static std::string jz_operator();
};

ReducedSpectrum quantize(const ReducedModel& rm);

struct LegendreReport {
  bool passed = false;
  RationalFunction lagrangian;
  std::vector<RationalFunction> momenta;
  RationalFunction legendre_hamiltonian;
  /// H0 - H0'
  RationalFunction hamiltonian_difference;
  /// phi_i with p_i replaced by the Lagrangian momenta.
  std::vector<RationalFunction> constraint_residuals;
};

/// Velocity symbols used by the Lagrangian check.
const std::array<algebra::Symbol, 2>& velocities();

/// Massless Lagrangian  -v_i (mu omega_c/2 + mu omega_0 a^2/(2 rho^2)) eps_ij x_j - mu omega_P^2 rho^2/2,
/// optionally plus `perturbation`.
RationalFunction massless_lagrangian(Orientation orientation, TrapLimit limit,
                                     const RationalFunction& perturbation = RationalFunction());

LegendreReport legendre_check(Orientation orientation, TrapLimit limit,
                              const RationalFunction& perturbation = RationalFunction());

}  // namespace abtrap::reduction
