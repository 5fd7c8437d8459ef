#include "abtrap/report/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/algebra/phase_space.hpp"
#include "abtrap/gauge/gauge.hpp"
#include "abtrap/reduction/dirac.hpp"
#include "abtrap/reduction/reduced_model.hpp"
#include "abtrap/secular/secular.hpp"
#include "abtrap/spectral/analysis.hpp"
#include "abtrap/support/parallel.hpp"

namespace abtrap::report {

using algebra::parse_expression;
using algebra::RationalFunction;
using reduction::Orientation;
using reduction::TrapLimit;

namespace {

Criterion timed(int id, std::string title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  c.id = id;
  c.title = std::move(title);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.notes.emplace_back("error", e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

RationalFunction random_quadratic(std::mt19937_64& rng) {
  const std::array<RationalFunction, 5> basis = {RationalFunction(1L), RationalFunction(algebra::x1()),
                                                 RationalFunction(algebra::x2()), RationalFunction(algebra::p1()),
                                                 RationalFunction(algebra::p2())};
  RationalFunction f;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const long coeff = static_cast<long>(rng() % 11) - 5;
      if (coeff != 0) f += RationalFunction(coeff) * basis[i] * basis[j];
    }
  }
  return f.is_zero() ? RationalFunction(algebra::x1()) * RationalFunction(algebra::p2()) : f;
}

void dirac_exactness(Criterion& c) {
  const reduction::DiracStructure rev(reduction::kinetic_constraints(Orientation::reversed, TrapLimit::full));
  const RationalFunction x1(algebra::x1()), x2(algebra::x2());
  const RationalFunction bracket = rev.bracket(x1, x2);
  const bool canonical = bracket == parse_expression("1/(mu*omega_c)");
  c.notes.emplace_back("x1_x2_reversed", algebra::to_string(bracket));
  const reduction::DiracStructure std_(reduction::kinetic_constraints(Orientation::standard, TrapLimit::full));
  const bool covariant = std_.bracket(x1, x2) == parse_expression("-1/(mu*omega_c)");
  c.notes.emplace_back("x1_x2_standard", algebra::to_string(std_.bracket(x1, x2)));

  std::mt19937_64 rng(0x5eed0001);
  int strong = 0;
  for (int t = 0; t < tolerance::kRandomBrackets; ++t) {
    const RationalFunction f = random_quadratic(rng);
    bool ok = true;
    for (const auto& phi : rev.constraints().constraints()) {
      ok = ok && rev.bracket_off_surface(phi, f).is_zero() && rev.bracket_off_surface(f, phi).is_zero();
    }
    strong += ok ? 1 : 0;
  }
  c.metrics.emplace_back("random_functions", tolerance::kRandomBrackets);
  c.metrics.emplace_back("constraints_strong", strong);
  c.passed = canonical && covariant && strong == tolerance::kRandomBrackets;
}

void degeneracy(Criterion& c) {
  bool ok = true;
  for (Orientation o : {Orientation::standard, Orientation::reversed}) {
    const auto flux_only = reduction::constraint_matrix(reduction::kinetic_constraints(o, TrapLimit::no_uniform_field));
    for (const auto& row : flux_only.entries) {
      for (const auto& e : row) ok = ok && e.is_zero();
    }
    ok = ok && flux_only.classification == reduction::Classification::degenerate;
    bool impossible = false;
    try {
      reduction::reduce_trap(o, TrapLimit::no_uniform_field);
    } catch (const reduction::ReductionImpossible& e) {
      impossible = true;
      if (o == Orientation::standard) c.notes.emplace_back("omega_c=0", e.what());
    }
    ok = ok && impossible;
    const auto full = reduction::constraint_matrix(reduction::kinetic_constraints(o, TrapLimit::full));
    const auto combined = reduction::constraint_matrix(reduction::kinetic_constraints(o, TrapLimit::no_flux));
    ok = ok && full.entries == combined.entries;
    const auto zp = reduction::quantize(reduction::reduce_trap(o, TrapLimit::no_flux)).zero_point_jz();
    ok = ok && zp == parse_expression("1/2");
    if (o == Orientation::standard) c.notes.emplace_back("omega_0=0 zero point", algebra::to_string(zp));
  }
  c.passed = ok;
}

void fractional_zero_point(Criterion& c) {
  bool ok = true;
  const algebra::Bindings scale{{algebra::Symbol(algebra::param::omega_c), parse_expression("7*omega_c/3")}};
  for (Orientation o : {Orientation::standard, Orientation::reversed}) {
    const auto q = reduction::quantize(reduction::reduce_trap(o, TrapLimit::full));
    ok = ok && q.zero_point_jz() == parse_expression("alpha + 1/2") && q.j_ab == parse_expression("alpha");
    ok = ok && algebra::substitute(q.zero_point_jz(), scale) == q.zero_point_jz() &&
         !q.j_ab.numerator().contains(algebra::Symbol(algebra::param::omega_c));
    if (o == Orientation::standard) {
      c.notes.emplace_back("zero_point_Jz", algebra::to_string(q.zero_point_jz()));
      c.notes.emplace_back("J_AB", algebra::to_string(q.j_ab));
    }
  }
  c.passed = ok;
}

void legendre(Criterion& c) {
  bool ok = true;
  const RationalFunction expected = parse_expression("mu*omega_P^2*(x1^2 + x2^2)/2");
  for (Orientation o : {Orientation::standard, Orientation::reversed}) {
    for (TrapLimit limit : {TrapLimit::full, TrapLimit::no_flux}) {
      const auto rep = reduction::legendre_check(o, limit);
      ok = ok && rep.passed && rep.hamiltonian_difference.is_zero() && rep.legendre_hamiltonian == expected;
    }
  }
  c.notes.emplace_back("H0", algebra::to_string(expected));
  c.passed = ok;
}

TrapConfig trap(double ratio, double alpha) {
  TrapConfig t;
  t.omega_c = ratio * t.omega_P;
  t.alpha = alpha;
  return t;
}

void spectral_oracle(Criterion& c, unsigned threads) {
  const std::vector<std::pair<double, double>> sets = {{0, 0}, {10, 0}, {0, 0.25}, {20, 0.25}};
  const std::vector<int> ms = {-2, -1, 0, 1, 2};
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [ratio, alpha] : sets) {
    const TrapConfig t = trap(ratio, alpha);
    for (const auto& r : spectral::solve_sectors(t, ms, 6, spectral::SolverOptions{}, threads)) {
      for (const auto& s : r.states) {
        const double exact = spectral::fock_darwin_energy(t, s.n, r.m);
        worst = std::max(worst, std::abs(s.energy - exact) / exact);
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.metrics.emplace_back("max_relative_error", worst);
  c.metrics.emplace_back("tolerance", tolerance::kSpectrumRelative);
  c.passed = worst <= tolerance::kSpectrumRelative && seconds <= tolerance::kSpectrumSeconds;
}

void slow_branch(Criterion& c, unsigned threads) {
  bool ok = true;
  for (double alpha : {0.0, 0.25}) {
    for (double ratio : {10.0, 30.0, 100.0}) {
      const auto rep = spectral::slow_branch_check(trap(ratio, alpha), spectral::SolverOptions{}, threads);
      const double contract = tolerance::kSlowBranchFactor / (ratio * ratio);
      ok = ok && rep.relative_gap <= contract;
      char key[48];
      std::snprintf(key, sizeof key, "gap(ratio=%g,alpha=%g)", ratio, alpha);
      c.metrics.emplace_back(key, rep.relative_gap);
    }
  }
  c.passed = ok;
}

void residual(Criterion& c, unsigned threads) {
  struct Point {
    double ratio, alpha;
  };
  std::vector<Point> grid;
  for (double ratio : {0.0, 10.0, 20.0, 50.0, 100.0}) {
    for (double alpha : {0.0, 0.25}) grid.push_back({ratio, alpha});
  }
  const auto violations = support::parallel_map<int>(grid.size(), threads, [&](std::size_t i) {
    const TrapConfig t = trap(grid[i].ratio, grid[i].alpha);
    int bad = 0;
    for (int m = -2; m <= 2; ++m) {
      const auto r = spectral::solve_sector(t, m, 6, spectral::SolverOptions{});
      for (const auto& e : spectral::residual_identity(r, t, spectral::kRotationSign, tolerance::kResidualSlack)) {
        bad += e.within_bound ? 0 : 1;
      }
    }
    return bad;
  });
  int bad = 0;
  for (int v : violations) bad += v;
  c.metrics.emplace_back("bound_violations", bad);

  bool decreasing = true;
  double last = std::numeric_limits<double>::infinity();
  for (double ratio : {10.0, 20.0, 50.0, 100.0}) {
    const TrapConfig t = trap(ratio, 0.25);
    const int m = spectral::first_slow_sector(t);
    const auto e = spectral::residual_identity(spectral::solve_sector(t, m, 1, spectral::SolverOptions{}), t).front();
    char key[48];
    std::snprintf(key, sizeof key, "slow_ground_|r|(ratio=%g)", ratio);
    c.metrics.emplace_back(key, std::abs(e.residual));
    decreasing = decreasing && std::abs(e.residual) < last;
    last = std::abs(e.residual);
  }
  c.notes.emplace_back("trend", decreasing ? "decreasing" : "not decreasing");
  c.passed = bad == 0 && decreasing;
}

void gauge_checks(Criterion& c) {
  TrapConfig t = trap(2.0, 0.25);
  t.a = 0.5;
  const auto pure = gauge::check_pure_gauge(t, gauge::exterior_samples(t, tolerance::kGaugeSamples, 0x9a09e));
  c.metrics.emplace_back("max_pure_gauge_residual", pure.max_residual);
  c.metrics.emplace_back("max_curl", pure.max_curl);
  double worst = 0.0;
  for (double k : {1.5, 3.0, 10.0}) {
    const double circ = gauge::circulation_over_2pi(t, k * t.a);
    worst = std::max(worst, std::abs(circ - t.alpha) / t.alpha);
  }
  c.metrics.emplace_back("circulation_relative_error", worst);
  bool symbolic = true;
  for (Orientation o : {Orientation::standard, Orientation::reversed}) {
    symbolic = symbolic && gauge::gauge_invariance_of_jz(o, TrapLimit::full).passed;
  }
  c.notes.emplace_back("symbolic_Jz", symbolic ? "pass" : "fail");
  c.passed = pure.max_residual <= tolerance::kPureGauge && pure.max_curl <= tolerance::kPureGauge &&
             worst <= tolerance::kCirculationRelative && symbolic;
}

double secular_estimate(double ratio, unsigned threads) {
  (void)threads;
  const TrapConfig t;
  const auto d = secular::PaulDrive::for_secular_frequency(1.0, 1.0, ratio);
  secular::ClassicalState s;
  s.x = {0.1, 0.0, 0.0};
  secular::IntegrationOptions o;
  o.duration = 2.0 * std::numbers::pi * 21.0;
  o.dt = secular::max_step(t, d);
  o.stride = 40;
  o.average_window = true;
  return secular::extract_secular_frequency(secular::integrate_trajectory(s, t, d, o)).omega;
}

void secular_validation(Criterion& c, unsigned threads) {
  const bool veff = secular::effective_potential_check().passed;
  c.notes.emplace_back("V_eff", veff ? "pass" : "fail");
  const std::vector<double> ratios = {20.0, 100.0};
  const auto est = support::parallel_map<double>(ratios.size(), threads,
                                                 [&](std::size_t i) { return secular_estimate(ratios[i], 1); });
  const double e20 = std::abs(est[0] - 1.0), e100 = std::abs(est[1] - 1.0);
  c.metrics.emplace_back("relative_error(ratio=20)", e20);
  c.metrics.emplace_back("relative_error(ratio=100)", e100);

  TrapConfig t = trap(0.5, 0.25);
  t.a = 0.1;
  const auto d = secular::PaulDrive::for_secular_frequency(1.0, 1.0, 20.0);
  secular::ClassicalState s;
  s.x = {1.0, 0.0, 0.2};
  s.v = {0.1, 0.8, 0.0};
  secular::IntegrationOptions o;
  o.duration = 2.0 * std::numbers::pi * 5.0;
  o.dt = secular::max_step(t, d);
  const auto tr = secular::integrate_trajectory(s, t, d, o);
  const double l0 = secular::canonical_angular_momentum(s, t);
  double drift = 0.0;
  for (const auto& q : tr.samples) drift = std::max(drift, std::abs(secular::canonical_angular_momentum(q, t) - l0) / std::abs(l0));
  c.metrics.emplace_back("angular_momentum_drift", drift);
  c.passed = veff && e20 <= tolerance::kSecularAt20 && e100 <= tolerance::kSecularAt100 && !tr.left_exterior &&
             drift <= tolerance::kAngularMomentumRelative;
}

}  // namespace

std::vector<Criterion> evaluate_criteria(unsigned threads) {
  std::vector<Criterion> out;
  out.push_back(timed(1, "Dirac-bracket exactness", dirac_exactness));
  out.push_back(timed(2, "degeneracy dichotomy", degeneracy));
  out.push_back(timed(3, "fractional zero point", fractional_zero_point));
  out.push_back(timed(4, "Legendre/limit equivalence", legendre));
  out.push_back(timed(5, "spectral oracle agreement", [&](Criterion& c) { spectral_oracle(c, threads); }));
  out.push_back(timed(6, "reduced-model asymptotics", [&](Criterion& c) { slow_branch(c, threads); }));
  out.push_back(timed(7, "J_z identity residual", [&](Criterion& c) { residual(c, threads); }));
  out.push_back(timed(8, "gauge checks", gauge_checks));
  out.push_back(timed(9, "secular validation", [&](Criterion& c) { secular_validation(c, threads); }));
  return out;
}

Criterion criterion_determinism(bool identical, const std::string& detail) {
  Criterion c;
  c.id = 10;
  c.title = "determinism";
  c.passed = identical;
  c.notes.emplace_back("tree", detail);
  return c;
}

std::string summary_line(const Criterion& c) {
  char head[96];
  std::snprintf(head, sizeof head, "%s criterion %2d  %-28s", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
  std::string out = head;
  for (const auto& [k, v] : c.metrics) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %s=%.3g", k.c_str(), v);
    out += buf;
  }
  for (const auto& [k, v] : c.notes) {
    if (k == "omega_c=0") continue;
    out += "  " + k + "=" + v;
  }
  char t[32];
  std::snprintf(t, sizeof t, "  (%.1f s)", c.seconds);
  return out + t;
}

}  // namespace abtrap::report
