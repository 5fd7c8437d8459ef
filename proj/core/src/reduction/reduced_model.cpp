#include "abtrap/reduction/reduced_model.hpp"

#include "abtrap/algebra/expression_io.hpp"

namespace abtrap::reduction {

using algebra::Rational;
using algebra::var;

namespace {

bool depends_on_phase_point(const RationalFunction& f) {
  for (const auto& s : algebra::coordinates()) {
    if (f.contains(s)) return true;
  }
  for (const auto& s : algebra::momenta()) {
    if (f.contains(s)) return true;
  }
  return false;
}

}  // namespace

ReducedModel reduce(const RationalFunction& h, const ConstraintSet& cs, Orientation orientation,
                    const algebra::Assumptions& assumptions) {
  const DiracStructure dirac(cs, assumptions);
  ReducedModel rm;
  rm.orientation = orientation;

  rm.surface_hamiltonian = dirac.on_surface(h);
  const algebra::Bindings unit_x1{{algebra::x1(), RationalFunction(1L)}, {algebra::x2(), RationalFunction()}};
  const RationalFunction k = algebra::substitute(rm.surface_hamiltonian, unit_x1);
  if (depends_on_phase_point(k) || !(k * rho_squared() == rm.surface_hamiltonian)) {
    throw ShapeMismatch("restricted Hamiltonian " + algebra::to_string(rm.surface_hamiltonian) +
                        " is not proportional to x1^2 + x2^2");
  }
  if (algebra::sign_under(k, assumptions) != algebra::Sign::positive) {
    throw ShapeMismatch("restricted potential is not confining");
  }

  rm.bracket_x1_x2 = dirac.bracket(RationalFunction(algebra::x1()), RationalFunction(algebra::x2()));
  if (depends_on_phase_point(rm.bracket_x1_x2) || rm.bracket_x1_x2.is_zero()) {
    throw ShapeMismatch("{x1, x2}_D is not a nonzero constant");
  }
  const RationalFunction kappa = rm.bracket_x1_x2.inverse();
  RationalFunction abs_kappa;
  switch (algebra::sign_under(kappa, assumptions)) {
    case algebra::Sign::positive: abs_kappa = kappa; break;
    case algebra::Sign::negative: abs_kappa = -kappa; break;
    default: throw ShapeMismatch("sign of {x1, x2}_D is undecidable");
  }
  rm.x = RationalFunction(algebra::x1());
  rm.p = kappa * RationalFunction(algebra::x2());

  // K rho^2 = p^2/(2 mu*) + mu* omega*^2 x^2 / 2
  rm.effective_mass = kappa.pow(2) / (RationalFunction(2L) * k);
  rm.effective_frequency = RationalFunction(2L) * k / abs_kappa;
  if (!(rm.effective_mass * rm.effective_frequency.pow(2) == RationalFunction(2L) * k)) {
    throw std::logic_error("mu* omega*^2 does not reproduce the restricted potential");
  }

  rm.surface_jz = in_terms_of_flux(dirac.on_surface(canonical_angular_momentum(orientation)));
  rm.j_ab = rm.surface_jz - in_terms_of_flux(rm.surface_hamiltonian) / in_terms_of_flux(rm.effective_frequency);
  if (depends_on_phase_point(rm.j_ab)) {
    throw ShapeMismatch("J_z on the surface is not a constant plus H/omega*: remainder " +
                        algebra::to_string(rm.j_ab));
  }
  return rm;
}

ReducedModel reduce_trap(Orientation orientation, TrapLimit limit) {
  ReducedModel rm = reduce(trap_hamiltonian(orientation, limit), kinetic_constraints(orientation, limit), orientation);
  rm.limit = limit;
  return rm;
}

RationalFunction ReducedSpectrum::energy(unsigned n) const {
  return omega_star * RationalFunction(Rational(2 * static_cast<long>(n) + 1, 2));
}

RationalFunction ReducedSpectrum::canonical_jz(unsigned n) const {
  return j_ab + RationalFunction(Rational(2 * static_cast<long>(n) + 1, 2));
}

std::string ReducedSpectrum::annihilation_operator() {
  return "A = sqrt(mu_star*omega_star/2)*(x + i*p/(mu_star*omega_star))";
}

std::string ReducedSpectrum::jz_operator() { return "J_z = J_AB + A^dagger*A + 1/2"; }

ReducedSpectrum quantize(const ReducedModel& rm) { return ReducedSpectrum{rm.effective_frequency, rm.j_ab}; }

const std::array<algebra::Symbol, 2>& velocities() {
  static const std::array<algebra::Symbol, 2> v{algebra::Symbol("v1"), algebra::Symbol("v2")};
  return v;
}

RationalFunction massless_lagrangian(Orientation orientation, TrapLimit limit, const RationalFunction& perturbation) {
  // p_i = -(mechanical momentum - p_i), so L0 = p_i v_i - mu omega_P^2 rho^2 / 2
  const RationalFunction mu = var(algebra::param::mu);
  RationalFunction l;
  for (int i = 0; i < 2; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const RationalFunction shift =
        mechanical_momentum(i, orientation, limit) - RationalFunction(algebra::momenta()[idx]);
    l -= shift * RationalFunction(velocities()[idx]);
  }
  l -= RationalFunction(Rational(1, 2)) * mu * var(algebra::param::omega_P).pow(2) * rho_squared();
  return l + perturbation;
}

LegendreReport legendre_check(Orientation orientation, TrapLimit limit, const RationalFunction& perturbation) {
  LegendreReport report;
  report.lagrangian = massless_lagrangian(orientation, limit, perturbation);
  RationalFunction pv;
  algebra::Bindings momenta;
  for (std::size_t i = 0; i < 2; ++i) {
    report.momenta.push_back(report.lagrangian.derivative(velocities()[i]));
    pv += report.momenta.back() * RationalFunction(velocities()[i]);
    momenta.emplace(algebra::momenta()[i], report.momenta.back());
  }
  report.legendre_hamiltonian = pv - report.lagrangian;
  const RationalFunction h0 =
      RationalFunction(Rational(1, 2)) * var(algebra::param::mu) * var(algebra::param::omega_P).pow(2) * rho_squared();
  report.hamiltonian_difference = h0 - report.legendre_hamiltonian;
  bool ok = report.hamiltonian_difference.is_zero();
  const ConstraintSet cs = kinetic_constraints(orientation, limit);
  for (const auto& phi : cs.constraints()) {
    report.constraint_residuals.push_back(algebra::substitute(phi, momenta));
    ok = ok && report.constraint_residuals.back().is_zero();
  }
  report.passed = ok;
  return report;
}

}  // namespace abtrap::reduction
