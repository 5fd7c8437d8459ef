#include <gtest/gtest.h>

#include <cmath>

#include "abtrap/spectral/analysis.hpp"

namespace {

using namespace abtrap;
using namespace abtrap::spectral;

TrapConfig trap(double omega_c, double alpha, double omega_P = 1.0) {
  TrapConfig c;
  c.omega_c = omega_c;
  c.alpha = alpha;
  c.omega_P = omega_P;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(RadialSolver, OscillatorGroundState) {
  const auto r = solve_sector(trap(0, 0), 0, 1, SolverOptions{});
  EXPECT_LT(rel(r.states[0].energy, 1.0), 1e-6);
}

TEST(RadialSolver, OscillatorTower) {
  const auto r = solve_sector(trap(0, 0), 0, 3, SolverOptions{});
  EXPECT_LT(rel(r.states[0].energy, 1.0), 1e-6);
  EXPECT_LT(rel(r.states[1].energy, 3.0), 1e-6);
  EXPECT_LT(rel(r.states[2].energy, 5.0), 1e-6);
}

TEST(RadialSolver, UniformFieldMatchesClosedForm) {
  const auto c = trap(10, 0);
  for (int m = -2; m <= 2; ++m) {
    const auto r = solve_sector(c, m, 6, SolverOptions{});
    for (const auto& s : r.states) EXPECT_LT(rel(s.energy, fock_darwin_energy(c, s.n, m)), 1e-6) << m << " " << s.n;
  }
}

TEST(RadialSolver, FluxLineMatchesClosedForm) {
  const auto c = trap(0, 0.25);
  for (int m = -2; m <= 2; ++m) {
    const auto r = solve_sector(c, m, 6, SolverOptions{});
    for (const auto& s : r.states) {
      const double expected = 2.0 * s.n + std::abs(m + kRotationSign * 0.25) + 1.0;
      EXPECT_LT(rel(s.energy, expected), 1e-6) << m << " " << s.n;
    }
  }
}

TEST(RadialSolver, RepeatedCallsAreBitIdentical) {
  const auto c = trap(20, 0.25);
  const auto a = solve_sector(c, 1, 4, SolverOptions{});
  const auto b = solve_sector(c, 1, 4, SolverOptions{});
  for (std::size_t j = 0; j < a.states.size(); ++j) {
    EXPECT_EQ(a.states[j].energy, b.states[j].energy);
    EXPECT_EQ(a.states[j].rho2, b.states[j].rho2);
    EXPECT_EQ(a.vectors[j], b.vectors[j]);
  }
}

TEST(RadialSolver, ThreadCountDoesNotChangeResults) {
  const auto c = trap(10, 0.25);
  const std::vector<int> ms = {-2, -1, 0, 1, 2};
  const auto one = solve_sectors(c, ms, 3, SolverOptions{}, 1);
  const auto four = solve_sectors(c, ms, 3, SolverOptions{}, 4);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    EXPECT_EQ(one[i].m, ms[i]);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(one[i].states[j].energy, four[i].states[j].energy);
  }
}

TEST(RadialSolver, ShortDomainIsGridTooSmall) {
  const auto c = trap(0, 0);
  SolverOptions o;
  o.R = 2.5;
  EXPECT_THROW(solve_sector(c, 0, 3, o), GridTooSmall);
}

TEST(RadialSolver, RejectsInvalidGrids) {
  SolverOptions o;
  o.N = 100;
  EXPECT_THROW(solve_sector(trap(0, 0), 0, 1, o), GridError);
  TrapConfig c = trap(0, 0.25);
  c.a = 0.5;
  SolverOptions fs;
  fs.model = RadialModel::finite_solenoid;
  fs.R = 0.4;
  EXPECT_THROW(solve_sector(c, 0, 1, fs), GridError);
  fs.R = 8.0;
  c.a = 0.0;
  EXPECT_THROW(solve_sector(c, 0, 1, fs), GridError);
}

TEST(RadialSolver, SecondOrderConvergence) {
  const auto c = trap(0, 0);
  SolverOptions o;
  o.richardson = false;
  o.R = 12.0;
  double e[3];
  for (int j = 0; j < 3; ++j) {
    o.N = 400 << j;
    e[j] = solve_sector(c, 0, 1, o).states[0].energy;
  }
  const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
  EXPECT_NEAR(ratio, 4.0, 0.1);
}

TEST(RadialSolver, FiniteSolenoidSecondOrderConvergence) {
  TrapConfig c = trap(2, 0.25);
  c.a = 0.3;
  SolverOptions o;
  o.model = RadialModel::finite_solenoid;
  o.richardson = false;
  o.R = 10.0;
  double e[3];
  for (int j = 0; j < 3; ++j) {
    o.N = 400 << j;
    e[j] = solve_sector(c, 1, 1, o).states[0].energy;
  }
  EXPECT_NEAR((e[0] - e[1]) / (e[1] - e[2]), 4.0, 0.1);
}

TEST(RadialSolver, ThinSolenoidApproachesFluxLine) {
  TrapConfig c = trap(2, 0.25);
  c.a = 0.05;
  SolverOptions fs;
  fs.model = RadialModel::finite_solenoid;
  for (int m : {3, -3}) {
    const auto wall = solve_sector(c, m, 2, fs);
    const auto line = solve_sector(c, m, 2, SolverOptions{});
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(rel(wall.states[j].energy, line.states[j].energy), 1e-6);
  }
}

TEST(RadialSolver, FluxPeriodicity) {
  // sector m at alpha matches sector m - s at alpha + 1
  const auto a = trap(5, 0.25);
  const auto b = trap(5, 1.25);
  for (int m = -2; m <= 2; ++m) {
    const auto ra = solve_sector(a, m, 4, SolverOptions{});
    const auto rb = solve_sector(b, m - kRotationSign, 4, SolverOptions{});
    for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(rel(ra.states[j].energy, rb.states[j].energy), 1e-10);
  }
}

TEST(RadialSolver, EigenvectorsAreOrthonormal) {
  const auto r = solve_sector(trap(10, 0.25), 0, 6, SolverOptions{});
  for (std::size_t i = 0; i < r.vectors.size(); ++i) {
    EXPECT_NEAR(r.states[i].norm, 1.0, 1e-10);
    for (std::size_t j = i + 1; j < r.vectors.size(); ++j) {
      double dot = 0.0;
      for (std::size_t q = 0; q < r.vectors[i].size(); ++q) dot += r.vectors[i][q] * r.vectors[j][q];
      EXPECT_LE(std::abs(dot), 1e-8);
    }
  }
}

TEST(RadialSolver, KineticEnergyIsNonNegative) {
  for (const auto& c : {trap(0, 0), trap(20, 0.25), trap(100, 0.25)}) {
    for (int m = -2; m <= 2; ++m) {
      for (const auto& s : solve_sector(c, m, 6, SolverOptions{}).states) EXPECT_GE(s.kinetic, -1e-9);
    }
  }
}

TEST(ResidualIdentity, BoundHoldsAcrossGrid) {
  for (double ratio : {0.0, 10.0, 20.0, 50.0, 100.0}) {
    for (double alpha : {0.0, 0.25}) {
      const auto c = trap(ratio, alpha);
      for (int m = -2; m <= 2; ++m) {
        for (const auto& e : residual_identity(solve_sector(c, m, 6, SolverOptions{}), c)) {
          EXPECT_TRUE(e.within_bound) << ratio << " " << alpha << " m=" << m << " n=" << e.n << " r=" << e.residual
                                      << " bound=" << e.bound;
        }
      }
    }
  }
}

TEST(ResidualIdentity, OscillatorResidualIsM) {
  const auto c = trap(0, 0);
  for (int m = -2; m <= 2; ++m) {
    for (const auto& e : residual_identity(solve_sector(c, m, 3, SolverOptions{}), c)) {
      EXPECT_EQ(e.residual, m);
      EXPECT_LE(std::abs(m), e.bound);
    }
  }
}

TEST(ResidualIdentity, MatchesLandauLevelLimit) {
  // n = 0 state with index lambda: r = lambda - (omega_c / 2 omega~)(|lambda| + 1)
  for (double ratio : {10.0, 20.0, 50.0, 100.0}) {
    const auto c = trap(ratio, 0.25);
    const int m = first_slow_sector(c);
    const auto e = residual_identity(solve_sector(c, m, 1, SolverOptions{}), c).front();
    const double lambda = m + kRotationSign * c.alpha;
    const double expected = -kRotationSign * (lambda - c.omega_c / (2.0 * c.omega_tilde()) * (std::abs(lambda) + 1.0));
    EXPECT_NEAR(e.residual, expected, 1e-6);
  }
}

TEST(SlowBranch, RatioTen) {
  const auto r = slow_branch_check(trap(10, 0.25), SolverOptions{});
  EXPECT_TRUE(r.passed) << r.relative_gap;
  EXPECT_LE(r.relative_gap, 2e-2);
  EXPECT_LT(rel(r.omega_minus, r.omega_minus_exact), 1e-5);
}

TEST(SlowBranch, RatioHundred) {
  const auto r = slow_branch_check(trap(100, 0.25), SolverOptions{});
  EXPECT_TRUE(r.passed) << r.relative_gap;
  EXPECT_LE(r.relative_gap, 2e-4);
}

TEST(SlowBranch, GapShrinksWithField) {
  double last = 1.0;
  for (double ratio : {10.0, 30.0, 100.0}) {
    const auto r = slow_branch_check(trap(ratio, 0.0), SolverOptions{});
    EXPECT_LT(r.relative_gap, last);
    last = r.relative_gap;
  }
}

TEST(SlowBranch, RejectsWeakField) { EXPECT_THROW(slow_branch_check(trap(5, 0), SolverOptions{}), std::invalid_argument); }

TEST(Axial, Ladder) {
  EXPECT_DOUBLE_EQ(axial_energy(trap(0, 0, 1.0), 0), 1.0);
  EXPECT_DOUBLE_EQ(axial_energy(trap(0, 0, 1.0), 1) - axial_energy(trap(0, 0, 1.0), 0), 2.0);
  EXPECT_DOUBLE_EQ(axial_energy(trap(0, 0, 0.5), 2), 2.5);
}

}  // namespace
