#include <gtest/gtest.h>

#include <cmath>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/algebra/phase_space.hpp"
#include "abtrap/gauge/gauge.hpp"
#include "abtrap/reduction/dirac.hpp"

namespace {

using namespace abtrap;
using namespace abtrap::gauge;
using reduction::TrapLimit;

TrapConfig solenoid(double a, double alpha, double omega_c = 2.0) {
  TrapConfig c;
  c.a = a;
  c.alpha = alpha;
  c.omega_c = omega_c;
  return c;
}

TEST(VectorPotential, ContinuousAtSolenoidWall) {
  const auto c = solenoid(0.7, 0.3);
  for (double t : {0.1, 1.3, 2.9, -2.0}) {
    const double x1 = c.a * std::cos(t), x2 = c.a * std::sin(t);
    for (auto o : {Orientation::standard, Orientation::reversed}) {
      const auto in = vector_potential<double>(Region::inside, c, o, x1, x2);
      const auto out = vector_potential<double>(Region::outside, c, o, x1, x2);
      EXPECT_NEAR(in[0], out[0], 1e-14);
      EXPECT_NEAR(in[1], out[1], 1e-14);
    }
  }
}

TEST(VectorPotential, CurlOfEachRegion) {
  const auto c = solenoid(0.5, 0.25, 3.0);
  const Point x{1.2, -0.4};
  EXPECT_NEAR(curl(Region::confining, c, Orientation::standard, x), c.mu * c.omega_c, 1e-12);
  EXPECT_NEAR(curl(Region::inside, c, Orientation::standard, x), c.mu * c.omega_0(), 1e-12);
  EXPECT_NEAR(curl(Region::outside, c, Orientation::standard, x), 0.0, 1e-12);
  EXPECT_NEAR(curl(Region::confining, c, Orientation::reversed, x), -c.mu * c.omega_c, 1e-12);
}

TEST(PureGauge, RandomExteriorPoints) {
  for (double alpha : {0.25, -1.7, 3.0}) {
    for (auto o : {Orientation::standard, Orientation::reversed}) {
      const auto c = solenoid(0.8, alpha);
      const auto rep = check_pure_gauge(c, exterior_samples(c, 64, 7), o);
      EXPECT_EQ(rep.points, 64u);
      EXPECT_LE(rep.max_residual, 1e-12);
      EXPECT_LE(rep.max_curl, 1e-12);
      EXPECT_TRUE(rep.passed);
    }
  }
}

TEST(PureGauge, SamplesRespectAnnulusAndCut) {
  const auto c = solenoid(0.5, 0.25);
  for (const auto& x : exterior_samples(c, 500, 3)) {
    const double r = std::hypot(x[0], x[1]);
    EXPECT_GT(r, c.a);
    EXPECT_LE(r, 10 * c.a * (1 + 1e-12));
    EXPECT_GE(M_PI - std::abs(std::atan2(x[1], x[0])), kCutMargin * (1 - 1e-9));
  }
}

TEST(PureGauge, RejectsInteriorAndCutPoints) {
  const auto c = solenoid(1.0, 0.25);
  EXPECT_THROW(check_pure_gauge(c, {{0.5, 0.1}}), PointRejected);
  EXPECT_THROW(check_pure_gauge(c, {{1.0, 0.0}}), PointRejected);
  EXPECT_THROW(check_pure_gauge(c, {{-2.0, 1e-5}}), PointRejected);
  EXPECT_NO_THROW(check_pure_gauge(c, {{-2.0, 0.01}}));
}

TEST(PureGauge, GradientMatchesGaugeFunction) {
  const auto c = solenoid(1.0, 0.4);
  const Point x{1.5, 2.0};
  const double h = 1e-6;
  const auto g = gauge_gradient(c, Orientation::standard, x);
  const double d1 = (gauge_function(c, Orientation::standard, {x[0] + h, x[1]}) -
                     gauge_function(c, Orientation::standard, {x[0] - h, x[1]})) / (2 * h);
  const double d2 = (gauge_function(c, Orientation::standard, {x[0], x[1] + h}) -
                     gauge_function(c, Orientation::standard, {x[0], x[1] - h})) / (2 * h);
  EXPECT_NEAR(g[0], d1, 1e-8);
  EXPECT_NEAR(g[1], d2, 1e-8);
  // jump of 2 pi alpha across the cut
  const double above = gauge_function(c, Orientation::standard, {-2.0, 1e-12});
  const double below = gauge_function(c, Orientation::standard, {-2.0, -1e-12});
  EXPECT_NEAR(below - above, 2 * M_PI * c.alpha, 1e-9);
}

TEST(Circulation, EqualsFluxAtEveryRadius) {
  const auto c = solenoid(0.6, 0.25);
  for (double k : {1.5, 2.0, 3.0, 10.0}) {
    EXPECT_NEAR(circulation_over_2pi(c, k * c.a), c.alpha, 1e-8 * c.alpha);
  }
  EXPECT_NEAR(circulation_over_2pi(c, 2 * c.a, 10000, Orientation::reversed), -c.alpha, 1e-8 * c.alpha);
  EXPECT_THROW(circulation_over_2pi(c, 0.5 * c.a), PointRejected);
}

TEST(GaugeSpectrum, ZeroFluxIsIdentity) {
  const auto rep = gauge_spectrum_equivalence(solenoid(0.0, 0.0), 1, 4);
  EXPECT_EQ(rep.max_relative_gap, 0.0);
}

TEST(GaugeSpectrum, QuarterFlux) {
  for (int m : {-1, 0, 1}) {
    const auto rep = gauge_spectrum_equivalence(solenoid(0.0, 0.25), m, 4);
    EXPECT_LE(rep.max_relative_gap, 1e-10);
    EXPECT_TRUE(rep.passed);
  }
}

TEST(GaugeSpectrum, FiniteSolenoid) {
  spectral::SolverOptions o;
  o.model = spectral::RadialModel::finite_solenoid;
  const auto rep = gauge_spectrum_equivalence(solenoid(0.3, 0.25), 0, 4, o);
  EXPECT_LE(rep.max_relative_gap, 1e-10);
}

TEST(GaugeSpectrum, IntegerFluxRelabelsSectors) {
  const auto c = solenoid(0.0, 1.0);
  TrapConfig plain = c;
  plain.alpha = 0.0;
  spectral::SolverOptions o;
  o.R = 14.0;
  for (int m = -2; m <= 2; ++m) {
    const auto flux = spectral::solve_sector(c, m, 3, o);
    const auto shifted = spectral::solve_sector(plain, m + spectral::kRotationSign, 3, o);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(flux.states[j].energy, shifted.states[j].energy);
  }
}

TEST(JzInvariance, GenericParameters) {
  for (auto o : {Orientation::standard, Orientation::reversed}) {
    const auto rep = gauge_invariance_of_jz(o, TrapLimit::full);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.transformed, rep.untransformed);
  }
}

TEST(JzInvariance, NoFlux) {
  const auto rep = gauge_invariance_of_jz(Orientation::standard, TrapLimit::no_flux);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.expected, algebra::parse_expression("mu*omega_c*(x1^2 + x2^2)/2"));
}

TEST(JzInvariance, NoFieldIsImpossible) {
  EXPECT_THROW(gauge_invariance_of_jz(Orientation::standard, TrapLimit::no_uniform_field),
               reduction::ReductionImpossible);
  EXPECT_THROW(gauge_invariance_of_jz(solenoid(1.0, 0.25, 0.0)), reduction::ReductionImpossible);
}

TEST(JzInvariance, UnchangedByScalingTheField) {
  const auto rep = gauge_invariance_of_jz(Orientation::standard, TrapLimit::full);
  const algebra::Bindings scale{{algebra::Symbol(algebra::param::omega_c), algebra::parse_expression("3*omega_c")}};
  EXPECT_EQ(algebra::substitute(rep.transformed, scale), algebra::substitute(rep.untransformed, scale));
  EXPECT_TRUE(gauge_invariance_of_jz(solenoid(1.0, 0.25, 7.0)).passed);
  EXPECT_TRUE(gauge_invariance_of_jz(solenoid(1.0, 0.25, 0.07)).passed);
}

}  // namespace
