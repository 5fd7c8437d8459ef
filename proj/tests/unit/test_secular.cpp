#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/algebra/phase_space.hpp"
#include "abtrap/secular/secular.hpp"

namespace {

using namespace abtrap;
using namespace abtrap::secular;
using std::numbers::pi;

TEST(PaulDrive, SecularFrequencyRoundTrip) {
  const auto d = PaulDrive::for_secular_frequency(2.0, 0.7, 30.0, 1.5);
  EXPECT_NEAR(d.omega_P(2.0), 0.7, 1e-12);
  EXPECT_NEAR(d.adiabaticity(2.0), 30.0, 1e-10);
  EXPECT_FALSE(d.marginal(2.0));
}

TEST(PaulDrive, DoublingVoltageDoublesOmegaP) {
  auto d = PaulDrive::for_secular_frequency(1.0, 1.0, 50.0);
  const double before = d.omega_P(1.0);
  d.V *= 2.0;
  EXPECT_NEAR(d.omega_P(1.0), 2.0 * before, 1e-12);
}

TEST(PaulDrive, Validation) {
  EXPECT_NO_THROW(PaulDrive::for_secular_frequency(1.0, 1.0, 10.5).validate(1.0));
  EXPECT_TRUE(PaulDrive::for_secular_frequency(1.0, 1.0, 15.0).marginal(1.0));
  EXPECT_THROW(PaulDrive::for_secular_frequency(1.0, 1.0, 5.0).validate(1.0), DriveError);
  PaulDrive bad;
  bad.V = 1.0;
  EXPECT_THROW(bad.validate(1.0), DriveError);
}

TEST(EffectivePotential, QuadrupolePasses) {
  const auto rep = effective_potential_check();
  EXPECT_TRUE(rep.passed) << algebra::to_string(rep.effective) << " vs " << algebra::to_string(rep.expected);
  EXPECT_EQ(rep.effective, rep.expected);
}

TEST(EffectivePotential, AxialCoefficientIsFourTimesRadial) {
  const auto rep = effective_potential_check();
  const algebra::NumericPoint zonly{{algebra::x1(), 0}, {algebra::x2(), 0}, {algebra::Symbol("z"), 1},
                                    {algebra::Symbol("V"), 3}, {algebra::Symbol("d"), 2}, {algebra::Symbol("mu"), 1},
                                    {algebra::Symbol("Omega_rf"), 5}};
  auto xonly = zonly;
  xonly[algebra::Symbol("z")] = 0;
  xonly[algebra::x1()] = 1;
  EXPECT_EQ(algebra::evaluate(rep.effective, zonly), 4 * algebra::evaluate(rep.effective, xonly));
}

TEST(EffectivePotential, LiteralLengthScalingFails) {
  // V d^2 in place of V / d^2 does not reproduce the effective potential
  const auto rep = effective_potential_check(algebra::parse_expression("V*d^2*(z^2 - (x1^2 + x2^2)/2)/2"));
  EXPECT_FALSE(rep.passed);
}

TEST(EffectivePotential, RejectsNonQuadrupoles) {
  for (const char* u : {"V*x1^3", "V*(x1^2 + x2^2 + z^2)", "V*x1*x2", "V*(z^2 - x1^2)", "V/(x1^2 + z^2)", "0"}) {
    EXPECT_THROW(effective_potential_check(algebra::parse_expression(u)), NotQuadrupole) << u;
  }
}

TrapConfig field(double omega_c, double a = 0.0, double alpha = 0.0) {
  TrapConfig c;
  c.omega_c = omega_c;
  c.a = a;
  c.alpha = alpha;
  return c;
}

TEST(Integrator, OriginIsEquilibrium) {
  const TrapConfig c = field(2.0, 0.2, 0.25);
  const auto d = PaulDrive::for_secular_frequency(1.0, 1.0, 20.0);
  IntegrationOptions o;
  o.duration = 10.0;
  o.dt = max_step(c, d);
  const auto tr = integrate_trajectory(ClassicalState{}, c, d, o);
  for (const auto& s : tr.samples) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(s.x[i], 0.0);
      EXPECT_EQ(s.v[i], 0.0);
    }
  }
  EXPECT_THROW(extract_secular_frequency(tr), NoSecularPeak);
}

TEST(Integrator, RejectsLargeStepAndBadState) {
  const auto d = PaulDrive::for_secular_frequency(1.0, 1.0, 20.0);
  IntegrationOptions o;
  o.duration = 1.0;
  o.dt = 2.0 * max_step(TrapConfig{}, d);
  EXPECT_THROW(integrate_trajectory(ClassicalState{}, TrapConfig{}, d, o), StepTooLarge);
  o.dt = max_step(TrapConfig{}, d);
  ClassicalState s;
  s.v[0] = std::nan("");
  EXPECT_THROW(integrate_trajectory(s, TrapConfig{}, d, o), IntegrationFailure);
}

ClassicalState cyclotron_start(double radius, double omega_c) {
  // clockwise orbit around the origin for B = mu omega_c > 0
  ClassicalState s;
  s.x = {radius, 0.0, 0.0};
  s.v = {0.0, -omega_c * radius, 0.0};
  return s;
}

TEST(Integrator, CyclotronOrbit) {
  const TrapConfig c = field(2.0);
  IntegrationOptions o;
  o.duration = 25 * 2 * pi / c.omega_c;
  o.dt = max_step(c, PaulDrive{}) / 4;
  const auto tr = integrate_trajectory(cyclotron_start(1.0, c.omega_c), c, PaulDrive{}, o);
  for (const auto& s : tr.samples) EXPECT_NEAR(std::hypot(s.x[0], s.x[1]), 1.0, 1e-6);
  const auto f = extract_secular_frequency(tr);
  EXPECT_LT(std::abs(f.omega - c.omega_c) / c.omega_c, 1e-3);
}

TEST(Integrator, MagneticForceDoesNoWork) {
  const TrapConfig c = field(3.0);
  ClassicalState s;
  s.x = {0.3, -0.2, 0.1};
  s.v = {0.5, 0.7, 0.2};
  IntegrationOptions o;
  o.duration = 100 * 2 * pi / c.omega_c;
  o.dt = max_step(c, PaulDrive{}) / 8;
  const auto tr = integrate_trajectory(s, c, PaulDrive{}, o);
  const auto speed = [](const ClassicalState& q) { return std::hypot(q.v[0], q.v[1], q.v[2]); };
  double worst = 0.0;
  for (const auto& q : tr.samples) worst = std::max(worst, std::abs(speed(q) - speed(s)) / speed(s));
  EXPECT_LE(worst, 1e-6);
}

TEST(Integrator, CanonicalAngularMomentumIsConserved) {
  const TrapConfig c = field(0.5, 0.1, 0.25);
  const auto d = PaulDrive::for_secular_frequency(1.0, 1.0, 20.0);
  ClassicalState s;
  s.x = {1.0, 0.0, 0.2};
  s.v = {0.1, 0.8, 0.0};
  IntegrationOptions o;
  o.duration = 2 * pi * 5;
  o.dt = max_step(c, d);
  const auto tr = integrate_trajectory(s, c, d, o);
  EXPECT_FALSE(tr.left_exterior);
  const double l0 = canonical_angular_momentum(s, c);
  double worst = 0.0;
  for (const auto& q : tr.samples) worst = std::max(worst, std::abs(canonical_angular_momentum(q, c) - l0) / std::abs(l0));
  EXPECT_LE(worst, 1e-6);
}

TEST(Integrator, AngularMomentumAcrossTheSolenoidWall) {
  TrapConfig c = field(1.0, 0.5, 0.3);
  ClassicalState s;
  s.x = {1.0, 0.0, 0.0};
  s.v = {-1.0, 0.05, 0.0};
  IntegrationOptions o;
  o.duration = 10.0;
  o.dt = max_step(c, PaulDrive{}) / 4;
  const auto tr = integrate_trajectory(s, c, PaulDrive{}, o);
  EXPECT_TRUE(tr.left_exterior);
  const double l0 = canonical_angular_momentum(s, c);
  for (const auto& q : tr.samples) EXPECT_NEAR(canonical_angular_momentum(q, c), l0, 1e-6 * std::abs(l0));
}

Trajectory secular_run(double ratio, int steps_per_period, ForceModel model = ForceModel::driven) {
  const TrapConfig c;
  const auto d = PaulDrive::for_secular_frequency(1.0, 1.0, ratio);
  ClassicalState s;
  s.x = {0.1, 0.0, 0.0};
  IntegrationOptions o;
  o.duration = 2 * pi * 21;
  o.dt = 2 * pi / (steps_per_period * d.Omega_rf);
  o.stride = static_cast<std::size_t>(steps_per_period);
  o.average_window = true;
  o.model = model;
  return integrate_trajectory(s, c, d, o);
}

TEST(SecularFrequency, RatioTwenty) {
  const auto tr = secular_run(20, 40);
  EXPECT_LE(tr.secular_energy_drift, 1e-2);
  const auto f = extract_secular_frequency(tr);
  EXPECT_LT(std::abs(f.omega - 1.0), 5e-2);
  EXPECT_LT(std::abs(f.interpolated - 1.0), 5e-2);
}

TEST(SecularFrequency, AgreesWithEffectivePotentialModel) {
  const auto driven = extract_secular_frequency(secular_run(20, 40));
  const auto averaged = extract_secular_frequency(secular_run(20, 40, ForceModel::averaged));
  EXPECT_NEAR(averaged.omega, 1.0, 1e-6);
  EXPECT_LT(std::abs(driven.omega - averaged.omega), 5e-2);
}

TEST(SecularFrequency, ConvergesWithAdiabaticity) {
  // RK4 error is removed by extrapolating over two step sizes
  auto estimate = [](double ratio) {
    const double coarse = extract_secular_frequency(secular_run(ratio, 40)).omega;
    const double fine = extract_secular_frequency(secular_run(ratio, 80)).omega;
    return (16.0 * fine - coarse) / 15.0;
  };
  const double e20 = std::abs(estimate(20) - 1.0);
  const double e100 = std::abs(estimate(100) - 1.0);
  EXPECT_LT(e100, 5e-3);
  EXPECT_GE(e20 / e100, 10.0) << e20 << " " << e100;
}

TEST(SecularFrequency, AxialMotionAtTwiceOmegaP) {
  const TrapConfig c;
  const auto d = PaulDrive::for_secular_frequency(1.0, 1.0, 20.0);
  ClassicalState s;
  s.x = {0.0, 0.0, 0.1};
  IntegrationOptions o;
  o.duration = 2 * pi * 21;
  o.dt = max_step(c, d);
  o.stride = 40;
  o.average_window = true;
  const auto f = extract_secular_frequency(integrate_trajectory(s, c, d, o), 2);
  EXPECT_LT(std::abs(f.omega - 2.0) / 2.0, 5e-2);
}

TEST(SecularFrequency, TooShortIsRejected) {
  const TrapConfig c = field(2.0);
  IntegrationOptions o;
  o.duration = 5 * 2 * pi / c.omega_c;
  o.dt = max_step(c, PaulDrive{}) / 4;
  EXPECT_THROW(extract_secular_frequency(integrate_trajectory(cyclotron_start(1.0, 2.0), c, PaulDrive{}, o)),
               std::invalid_argument);
}

}  // namespace
