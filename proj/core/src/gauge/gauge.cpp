#include "abtrap/gauge/gauge.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "abtrap/reduction/dirac.hpp"

namespace abtrap::gauge {

using algebra::RationalFunction;
using reduction::TrapLimit;

const char* to_string(Region region) {
  switch (region) {
    case Region::inside: return "inside";
    case Region::outside: return "outside";
    case Region::confining: return "confining";
  }
  return "unknown";
}

double curl(Region region, const TrapConfig& c, Orientation o, Point x) {
  using C = std::complex<double>;
  constexpr double step = 1e-30;
  const auto d1 = vector_potential<C>(region, c, o, C(x[0], step), C(x[1], 0.0));
  const auto d2 = vector_potential<C>(region, c, o, C(x[0], 0.0), C(x[1], step));
  return d1[1].imag() / step - d2[0].imag() / step;
}

double gauge_function(const TrapConfig& c, Orientation o, Point x) {
  return -static_cast<int>(o) * c.alpha * std::atan2(x[1], x[0]);
}

Point gauge_gradient(const TrapConfig& c, Orientation o, Point x) {
  const double w = -static_cast<int>(o) * c.alpha / (x[0] * x[0] + x[1] * x[1]);
  return {-w * x[1], w * x[0]};
}

namespace {

double length_scale(const TrapConfig& c) { return c.a > 0.0 ? c.a : 1.0; }

double distance_to_cut(Point x) { return std::numbers::pi - std::abs(std::atan2(x[1], x[0])); }

}  // namespace

std::vector<Point> exterior_samples(const TrapConfig& c, std::size_t count, std::uint64_t seed, double outer,
                                    double gap, double margin) {
  const double a = length_scale(c);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> area(std::pow(a * (1.0 + gap), 2), std::pow(a * outer, 2));
  std::uniform_real_distribution<double> angle(-std::numbers::pi + margin, std::numbers::pi - margin);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = std::sqrt(area(rng));
    const double t = angle(rng);
    out.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return out;
}

PureGaugeReport check_pure_gauge(const TrapConfig& c, const std::vector<Point>& points, Orientation o, double margin) {
  c.validate();
  PureGaugeReport rep;
  for (const auto& x : points) {
    const double rho = std::hypot(x[0], x[1]);
    if (!(rho > c.a) || rho == 0.0) throw PointRejected("sample point lies inside the solenoid");
    if (distance_to_cut(x) < margin) throw PointRejected("sample point is within the branch-cut margin");
    const auto a = vector_potential<double>(Region::outside, c, o, x[0], x[1]);
    const auto g = gauge_gradient(c, o, x);
    rep.max_residual = std::max(rep.max_residual, std::hypot(a[0] + g[0], a[1] + g[1]));
    rep.max_curl = std::max(rep.max_curl, std::abs(curl(Region::outside, c, o, x)));
  }
  rep.points = points.size();
  rep.passed = rep.max_residual <= kPureGaugeTolerance && rep.max_curl <= kPureGaugeTolerance;
  return rep;
}

double circulation_over_2pi(const TrapConfig& c, double radius, std::size_t nodes, Orientation o) {
  if (!(radius > c.a)) throw PointRejected("loop must stay outside the solenoid");
  if (nodes < 3) throw std::invalid_argument("at least three quadrature nodes");
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = dt * static_cast<double>(i);
    const double x1 = radius * std::cos(t);
    const double x2 = radius * std::sin(t);
    const auto a = vector_potential<double>(Region::outside, c, o, x1, x2);
    sum += a[0] * -x2 + a[1] * x1;
  }
  return sum * dt / (2.0 * std::numbers::pi);
}

SpectrumGapReport gauge_spectrum_equivalence(const TrapConfig& c, int m, int k,
                                             const spectral::SolverOptions& options) {
  spectral::SolverOptions o = options;
  if (!o.R) o.R = spectral::default_outer_radius(c, m, k, o.model);
  TrapConfig plain = c;
  plain.alpha = 0.0;
  const auto flux = spectral::solve_sector(c, m, k, o);
  const auto twisted = spectral::solve_sector(plain, m, k, o, spectral::kRotationSign * c.alpha);
  SpectrumGapReport rep;
  rep.m = m;
  for (std::size_t j = 0; j < flux.states.size(); ++j) {
    rep.flux.push_back(flux.states[j].energy);
    rep.twisted.push_back(twisted.states[j].energy);
    const double gap = std::abs(rep.flux[j] - rep.twisted[j]) / std::abs(rep.flux[j]);
    rep.max_relative_gap = std::max(rep.max_relative_gap, gap);
  }
  rep.passed = rep.max_relative_gap <= kSpectrumGapTolerance;
  return rep;
}

JzInvarianceReport gauge_invariance_of_jz(Orientation o, TrapLimit limit) {
  using algebra::var;
  namespace param = algebra::param;
  const bool field = limit != TrapLimit::no_uniform_field;
  const bool flux = limit != TrapLimit::no_flux;
  const RationalFunction alpha = flux ? var(param::alpha) : RationalFunction();

  // chi removes the exterior flux term from the constraints and shifts J_z by alpha
  std::vector<RationalFunction> hat;
  for (int i = 0; i < 2; ++i) {
    hat.push_back(field ? reduction::mechanical_momentum(i, o, TrapLimit::no_flux)
                        : RationalFunction(algebra::momenta()[static_cast<std::size_t>(i)]));
  }
  const reduction::DiracStructure transformed(reduction::ConstraintSet(hat, "gauge-transformed"));
  const reduction::DiracStructure original(reduction::kinetic_constraints(o, limit));

  JzInvarianceReport rep;
  rep.limit = limit;
  const RationalFunction jz = reduction::canonical_angular_momentum(o);
  rep.transformed = transformed.on_surface(jz + alpha);
  rep.untransformed = reduction::in_terms_of_flux(original.on_surface(jz));
  rep.expected = alpha + RationalFunction(algebra::Rational(1, 2)) * var(param::mu) * var(param::omega_c) *
                             reduction::rho_squared();
  rep.passed = rep.transformed == rep.expected && rep.untransformed == rep.expected;
  return rep;
}

JzInvarianceReport gauge_invariance_of_jz(const TrapConfig& c, Orientation o) {
  c.validate();
  const TrapLimit limit = c.omega_c == 0.0 ? TrapLimit::no_uniform_field
                          : c.alpha == 0.0 ? TrapLimit::no_flux
                                           : TrapLimit::full;
  return gauge_invariance_of_jz(o, limit);
}

}  // namespace abtrap::gauge
