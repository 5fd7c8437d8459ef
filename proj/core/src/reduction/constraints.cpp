#include "abtrap/reduction/constraints.hpp"

namespace abtrap::reduction {

using algebra::Rational;
using algebra::var;

int epsilon(Orientation orientation, int i, int j) {
  if (i == j) return 0;
  const int base = (i == 0) ? 1 : -1;
  return base * static_cast<int>(orientation);
}

const char* to_string(Orientation orientation) {
  return orientation == Orientation::standard ? "eps12=+1" : "eps12=-1";
}

const char* to_string(TrapLimit limit) {
  switch (limit) {
    case TrapLimit::full: return "uniform field + solenoid flux";
    case TrapLimit::no_uniform_field: return "solenoid flux only (omega_c = 0)";
    case TrapLimit::no_flux: return "combined trap (omega_0 = 0)";
  }
  return "unknown";
}

ConstraintSet::ConstraintSet(std::vector<RationalFunction> constraints, std::string provenance)
    : constraints_(std::move(constraints)), provenance_(std::move(provenance)) {
  if (constraints_.empty()) throw std::invalid_argument("a constraint set needs at least one constraint");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints_.size(); ++j) {
      if (constraints_[i] == constraints_[j]) throw std::invalid_argument("constraints must be distinct");
    }
  }
}

RationalFunction rho_squared() {
  const RationalFunction x(algebra::x1());
  const RationalFunction y(algebra::x2());
  return x * x + y * y;
}

RationalFunction mechanical_momentum(int i, Orientation orientation, TrapLimit limit) {
  const auto& xs = algebra::coordinates();
  RationalFunction eps_x;  // eps_ij x_j
  for (int j = 0; j < 2; ++j) {
    const int e = epsilon(orientation, i, j);
    if (e != 0) eps_x += RationalFunction(static_cast<long>(e)) * RationalFunction(xs[static_cast<std::size_t>(j)]);
  }
  const RationalFunction half(Rational(1, 2));
  RationalFunction out(algebra::momenta()[static_cast<std::size_t>(i)]);
  if (limit != TrapLimit::no_uniform_field) {
    out += half * var(algebra::param::mu) * var(algebra::param::omega_c) * eps_x;
  }
  if (limit != TrapLimit::no_flux) {
    const RationalFunction strength = half * var(algebra::param::mu) * var(algebra::param::omega_0) *
                                      var(algebra::param::a).pow(2);
    out += strength * eps_x / rho_squared();
  }
  return out;
}

ConstraintSet kinetic_constraints(Orientation orientation, TrapLimit limit) {
  return ConstraintSet({mechanical_momentum(0, orientation, limit), mechanical_momentum(1, orientation, limit)},
                       std::string(to_string(limit)) + ", " + to_string(orientation));
}

RationalFunction trap_hamiltonian(Orientation orientation, TrapLimit limit) {
  const RationalFunction mu = var(algebra::param::mu);
  RationalFunction h;
  for (int i = 0; i < 2; ++i) h += mechanical_momentum(i, orientation, limit).pow(2);
  h /= RationalFunction(2L) * mu;
  h += RationalFunction(Rational(1, 2)) * mu * var(algebra::param::omega_P).pow(2) * rho_squared();
  return h;
}

RationalFunction canonical_angular_momentum(Orientation orientation) {
  RationalFunction j;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      const int e = epsilon(orientation, static_cast<int>(i), static_cast<int>(k));
      if (e == 0) continue;
      j += RationalFunction(static_cast<long>(e)) * RationalFunction(algebra::coordinates()[i]) *
           RationalFunction(algebra::momenta()[k]);
    }
  }
  return j;
}

RationalFunction in_terms_of_flux(const RationalFunction& f) {
  const algebra::Symbol omega0(algebra::param::omega_0);
  if (!f.contains(omega0)) return f;
  const RationalFunction replacement =
      RationalFunction(2L) * var(algebra::param::alpha) / (var(algebra::param::mu) * var(algebra::param::a).pow(2));
  return algebra::substitute(f, {{omega0, replacement}});
}

}  // namespace abtrap::reduction
