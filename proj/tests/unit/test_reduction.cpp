#include <gtest/gtest.h>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/reduction/reduced_model.hpp"
#include "support/random_expressions.hpp"

namespace {

using namespace abtrap::algebra;
using namespace abtrap::reduction;

RationalFunction rf(const char* text) { return parse_expression(text); }

constexpr Orientation kBoth[] = {Orientation::standard, Orientation::reversed};

RationalFunction sign_of(Orientation o) { return RationalFunction(static_cast<long>(o)); }

TEST(ConstraintMatrix, FullTrapIsSecondClass) {
  for (Orientation o : kBoth) {
    const auto c = constraint_matrix(kinetic_constraints(o, TrapLimit::full));
    EXPECT_EQ(c.classification, Classification::second_class);
    EXPECT_EQ(c.entries[0][1], sign_of(o) * rf("mu*omega_c"));
    EXPECT_EQ(c.entries[1][0], -c.entries[0][1]);
    EXPECT_TRUE(c.entries[0][0].is_zero());
  }
}

TEST(ConstraintMatrix, FluxOnlyIsDegenerate) {
  for (Orientation o : kBoth) {
    const auto c = constraint_matrix(kinetic_constraints(o, TrapLimit::no_uniform_field));
    EXPECT_EQ(c.classification, Classification::degenerate);
    for (const auto& row : c.entries) {
      for (const auto& e : row) EXPECT_TRUE(e.is_zero());
    }
  }
}

TEST(ConstraintMatrix, CombinedTrapMatchesFullTrap) {
  for (Orientation o : kBoth) {
    const auto full = constraint_matrix(kinetic_constraints(o, TrapLimit::full));
    const auto hat = constraint_matrix(kinetic_constraints(o, TrapLimit::no_flux));
    EXPECT_EQ(hat.classification, Classification::second_class);
    EXPECT_EQ(hat.entries, full.entries);
  }
}

TEST(ConstraintMatrix, UndecidableSignIsAnError) {
  const ConstraintSet cs({rf("p1 + g*x2"), rf("p2")}, "sign-free coupling");
  EXPECT_THROW(constraint_matrix(cs), ClassificationUndecidable);
}

TEST(ConstraintSet, RejectsEmptyAndRepeated) {
  EXPECT_THROW(ConstraintSet({}, "empty"), std::invalid_argument);
  EXPECT_THROW(ConstraintSet({rf("p1"), rf("2*p1/2")}, "twice"), std::invalid_argument);
}

TEST(DiracBracket, CoordinatesDoNotCommute) {
  const auto cs_rev = kinetic_constraints(Orientation::reversed, TrapLimit::full);
  EXPECT_EQ(dirac_bracket(RationalFunction(x1()), RationalFunction(x2()), cs_rev), rf("1/(mu*omega_c)"));
  const auto cs_std = kinetic_constraints(Orientation::standard, TrapLimit::full);
  EXPECT_EQ(dirac_bracket(RationalFunction(x1()), RationalFunction(x2()), cs_std), rf("-1/(mu*omega_c)"));
}

TEST(DiracBracket, CovariantFormHoldsInBothOrientations) {
  // {x_i, x_j}_D = -eps_ij / (mu omega_c)
  for (Orientation o : kBoth) {
    const DiracStructure d(kinetic_constraints(o, TrapLimit::full));
    const auto t = d.table();
    EXPECT_EQ(t[0][1], RationalFunction(static_cast<long>(-epsilon(o, 0, 1))) / rf("mu*omega_c"));
  }
}

TEST(DiracBracket, ConstraintsAreStrong) {
  const auto cs = kinetic_constraints(Orientation::standard, TrapLimit::full);
  const DiracStructure d(cs);
  EXPECT_TRUE(d.bracket(cs[0], RationalFunction(x2())).is_zero());
  EXPECT_TRUE(d.bracket(RationalFunction(x1()), RationalFunction(x1())).is_zero());
}

TEST(DiracBracket, ConstraintsAreStrongForRandomPolynomials) {
  abtrap::testing::RandomExpressions gen(20240601);
  for (Orientation o : kBoth) {
    for (TrapLimit limit : {TrapLimit::full, TrapLimit::no_flux}) {
      const DiracStructure d(kinetic_constraints(o, limit));
      for (int trial = 0; trial < 12; ++trial) {
        const auto f = gen.polynomial(2, true);
        for (const auto& phi : d.constraints().constraints()) {
          EXPECT_TRUE(d.bracket_off_surface(phi, f).is_zero()) << to_string(f);
          EXPECT_TRUE(d.bracket_off_surface(f, phi).is_zero()) << to_string(f);
        }
      }
    }
  }
}

TEST(DiracBracket, AntisymmetryAndLinearity) {
  abtrap::testing::RandomExpressions gen(77);
  const DiracStructure d(kinetic_constraints(Orientation::standard, TrapLimit::full));
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = gen.polynomial(2);
    const auto g = gen.polynomial(2);
    const auto h = gen.polynomial(2);
    const RationalFunction c(gen.small_rational());
    EXPECT_EQ(d.bracket(f, g), -d.bracket(g, f));
    EXPECT_EQ(d.bracket(f + c * g, h), d.bracket(f, h) + c * d.bracket(g, h));
  }
}

TEST(DiracBracket, TableIsAntisymmetric) {
  const DiracStructure d(kinetic_constraints(Orientation::reversed, TrapLimit::full));
  const auto t = d.table();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t[i][j], -t[j][i]);
  }
}

TEST(DiracBracket, DegenerateSetRaisesReductionImpossible) {
  const auto cs = kinetic_constraints(Orientation::standard, TrapLimit::no_uniform_field);
  try {
    dirac_bracket(RationalFunction(x1()), RationalFunction(x2()), cs);
    FAIL() << "expected ReductionImpossible";
  } catch (const ReductionImpossible& e) {
    EXPECT_EQ(e.matrix().classification, Classification::degenerate);
    EXPECT_NE(std::string(e.what()).find("[[0, 0], [0, 0]]"), std::string::npos);
  }
}

TEST(Reduce, EffectiveMassAndFrequency) {
  for (Orientation o : kBoth) {
    const auto rm = reduce_trap(o, TrapLimit::full);
    EXPECT_EQ(rm.effective_mass, rf("mu*omega_c^2/omega_P^2"));
    EXPECT_EQ(rm.effective_frequency, rf("omega_P^2/omega_c"));
    EXPECT_EQ(rm.effective_mass * rm.effective_frequency.pow(2), rf("mu*omega_P^2"));
    EXPECT_EQ(rm.surface_hamiltonian, rf("mu*omega_P^2*(x1^2 + x2^2)/2"));
  }
}

TEST(Reduce, CanonicalPair) {
  const auto rm = reduce_trap(Orientation::reversed, TrapLimit::full);
  EXPECT_EQ(rm.p, rf("mu*omega_c*x2"));
  for (Orientation o : kBoth) {
    const auto r = reduce_trap(o, TrapLimit::full);
    const DiracStructure d(kinetic_constraints(o, TrapLimit::full));
    EXPECT_EQ(d.bracket(r.x, r.p), RationalFunction(1L));
  }
}

TEST(Reduce, CombinedTrapHasSameOscillator) {
  const auto full = reduce_trap(Orientation::standard, TrapLimit::full);
  const auto hat = reduce_trap(Orientation::standard, TrapLimit::no_flux);
  EXPECT_EQ(hat.effective_mass, full.effective_mass);
  EXPECT_EQ(hat.effective_frequency, full.effective_frequency);
  EXPECT_EQ(quantize(hat).zero_point_jz(), RationalFunction(Rational(1, 2)));
}

TEST(Reduce, FluxOnlyIsImpossible) {
  EXPECT_THROW(reduce_trap(Orientation::standard, TrapLimit::no_uniform_field), ReductionImpossible);
}

TEST(Reduce, RejectsNonQuadraticHamiltonian) {
  const auto cs = kinetic_constraints(Orientation::standard, TrapLimit::full);
  const auto h = trap_hamiltonian(Orientation::standard, TrapLimit::full) + rf("x1^4");
  EXPECT_THROW(reduce(h, cs, Orientation::standard), ShapeMismatch);
  const auto anisotropic = trap_hamiltonian(Orientation::standard, TrapLimit::full) + rf("x1^2");
  EXPECT_THROW(reduce(anisotropic, cs, Orientation::standard), ShapeMismatch);
}

TEST(Reduce, AngularMomentumSplitsIntoFluxAndOscillator) {
  for (Orientation o : kBoth) {
    const auto rm = reduce_trap(o, TrapLimit::full);
    EXPECT_EQ(rm.j_ab, rf("alpha"));
    EXPECT_EQ(rm.surface_jz, rf("alpha + mu*omega_c*(x1^2 + x2^2)/2"));
  }
}

TEST(Quantize, QuarterFlux) {
  const auto spec = quantize(reduce_trap(Orientation::standard, TrapLimit::full));
  const NumericPoint quarter{{Symbol("alpha"), Rational(1, 4)}};
  EXPECT_EQ(evaluate(spec.zero_point_jz(), quarter), Rational(3, 4));
  EXPECT_EQ(evaluate(spec.canonical_jz(3), quarter), Rational(15, 4));
  EXPECT_EQ(spec.energy(1) - spec.energy(0), spec.omega_star);
  EXPECT_EQ(spec.j_ab, rf("alpha"));
}

TEST(Quantize, ZeroFlux) {
  const auto spec = quantize(reduce_trap(Orientation::standard, TrapLimit::full));
  EXPECT_EQ(evaluate(spec.zero_point_jz(), {{Symbol("alpha"), Rational(0)}}), Rational(1, 2));
}

TEST(Quantize, ScalingUniformFieldLeavesFluxPartAlone) {
  const auto rm = reduce_trap(Orientation::standard, TrapLimit::full);
  const Bindings scale{{Symbol("omega_c"), rf("3*omega_c")}};
  const auto spec = quantize(rm);
  EXPECT_EQ(substitute(spec.omega_star, scale), spec.omega_star / RationalFunction(3L));
  EXPECT_EQ(substitute(rm.effective_mass, scale), rm.effective_mass * RationalFunction(9L));
  EXPECT_EQ(substitute(spec.j_ab, scale), rf("alpha"));
  EXPECT_EQ(substitute(spec.zero_point_jz(), scale), rf("alpha + 1/2"));
}

TEST(Legendre, GenericParametersPass) {
  for (Orientation o : kBoth) {
    const auto report = legendre_check(o, TrapLimit::full);
    EXPECT_TRUE(report.passed);
    EXPECT_TRUE(report.hamiltonian_difference.is_zero());
  }
}

TEST(Legendre, CombinedTrapPasses) { EXPECT_TRUE(legendre_check(Orientation::standard, TrapLimit::no_flux).passed); }

TEST(Legendre, PerturbationIsDetected) {
  const auto report = legendre_check(Orientation::standard, TrapLimit::full, rf("eps*x1^2"));
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(report.hamiltonian_difference, rf("eps*x1^2"));
}

}  // namespace
