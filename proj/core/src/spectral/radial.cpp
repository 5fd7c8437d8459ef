#include "abtrap/spectral/radial.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "abtrap/support/parallel.hpp"

namespace abtrap::spectral {

const char* to_string(RadialModel model) {
  return model == RadialModel::flux_line ? "flux_line" : "finite_solenoid";
}

GridTooSmall::GridTooSmall(int m, int state, double tail_mass, double R)
    : std::runtime_error("sector m=" + std::to_string(m) + ": state " + std::to_string(state) +
                         " has probability " + std::to_string(tail_mass) + " in the outer 10% of R=" +
                         std::to_string(R)),
      m_(m) {}

NumericalFailure::NumericalFailure(int m, const std::string& what)
    : std::runtime_error("sector m=" + std::to_string(m) + ": " + what), m_(m) {}

double angular_index(const TrapConfig& config, const RadialProblem& problem) {
  return problem.m + problem.twist + problem.s * config.alpha;
}

double default_outer_radius(const TrapConfig& config, int m, int k, RadialModel model) {
  const double length = 1.0 / std::sqrt(config.mu * config.omega_tilde());
  const double nu = std::abs(m + kRotationSign * config.alpha);
  const double turning = std::sqrt(2.0 * (2.0 * (k - 1) + nu + 1.0));
  const double start = model == RadialModel::finite_solenoid ? config.a : 0.0;
  return start + (turning + 10.0) * length;
}

RadialProblem make_problem(const TrapConfig& config, int m, int k, const SolverOptions& options) {
  RadialProblem p;
  p.m = m;
  p.model = options.model;
  p.N = options.N;
  p.R = options.R ? *options.R : default_outer_radius(config, m, k, options.model);
  return p;
}

namespace {

void check_grid(const TrapConfig& config, const RadialProblem& p) {
  if (p.N < 200) throw GridError("N must be at least 200");
  if (!(p.R > 0.0) || !std::isfinite(p.R)) throw GridError("outer radius must be positive");
  if (p.model == RadialModel::finite_solenoid) {
    if (!(config.a > 0.0)) throw GridError("finite solenoid model needs a > 0");
    if (!(p.R > config.a)) throw GridError("outer radius must exceed the solenoid radius");
  }
  if (p.s != 1 && p.s != -1) throw GridError("sign convention must be +1 or -1");
}

// log of (1 - t^p) / p for t = exp(log_t) in [0, 1); t = 0 allowed via log_t = -inf.
double log_one_minus_power(double p, double log_t) { return std::log(-std::expm1(p * log_t)); }

RadialOperator build_flux_line(const TrapConfig& config, const RadialProblem& p) {
  const auto n = static_cast<std::size_t>(p.N);
  const double h = p.R / p.N;
  const double lambda = angular_index(config, p);
  const double nu = std::abs(lambda);
  const double pw = 2.0 * nu + 2.0;
  const double b2 = 0.5 * config.mu * config.omega_c;
  const double inv2mu = 0.5 / config.mu;

  RadialOperator op;
  op.problem = p;
  op.radius.resize(n);
  op.rho2.resize(n);
  std::vector<double> log_mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) * h;
    const double hi = static_cast<double>(i + 1) * h;
    const double log_t = i == 0 ? -std::numeric_limits<double>::infinity() : std::log(lo / hi);
    op.radius[i] = (static_cast<double>(i) + 0.5) * h;
    log_mass[i] = pw * std::log(hi) + log_one_minus_power(pw, log_t) - std::log(pw);
    op.rho2[i] = pw / (pw + 2.0) * hi * hi * std::expm1((pw + 2.0) * log_t) / std::expm1(pw * log_t);
  }

  // 1 / int_{r0}^{r1} rho^-(2 nu + 1) d rho
  auto log_conductance = [nu](double r0, double r1) {
    const double span = std::log(r1 / r0);
    const double factor = nu > 0.0 ? -std::expm1(-2.0 * nu * span) / (2.0 * nu) : span;
    return 2.0 * nu * std::log(r0) - std::log(factor);
  };

  op.diagonal.assign(n, 0.0);
  op.off_diagonal.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lc = log_conductance(op.radius[i], op.radius[i + 1]);
    op.diagonal[i] += inv2mu * std::exp(lc - log_mass[i]);
    op.diagonal[i + 1] += inv2mu * std::exp(lc - log_mass[i + 1]);
    op.off_diagonal[i] = -inv2mu * std::exp(lc - 0.5 * (log_mass[i] + log_mass[i + 1]));
  }
  op.diagonal[n - 1] += inv2mu * std::exp(log_conductance(op.radius[n - 1], p.R) - log_mass[n - 1]);

  const double trap = 0.5 * config.mu * config.omega_P * config.omega_P;
  for (std::size_t i = 0; i < n; ++i) {
    op.diagonal[i] += inv2mu * (2.0 * p.s * lambda * b2 + b2 * b2 * op.rho2[i]) + trap * op.rho2[i];
  }
  return op;
}

RadialOperator build_finite_solenoid(const TrapConfig& config, const RadialProblem& p) {
  const auto n = static_cast<std::size_t>(p.N);
  const double h = (p.R - config.a) / (p.N + 1);
  const double inv2mu = 0.5 / config.mu;
  const double kinetic = inv2mu / (h * h);

  RadialOperator op;
  op.problem = p;
  op.radius.resize(n);
  op.rho2.resize(n);
  op.diagonal.resize(n);
  op.off_diagonal.assign(n - 1, -kinetic);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = config.a + static_cast<double>(i + 1) * h;
    const double beta = 0.5 * config.mu * config.omega_c * r * r + config.alpha;
    const double index = p.m + p.twist + p.s * beta;
    op.radius[i] = r;
    op.rho2[i] = r * r;
    op.diagonal[i] = 2.0 * kinetic + inv2mu * (index * index - 0.25) / (r * r) +
                     0.5 * config.mu * config.omega_P * config.omega_P * r * r;
  }
  return op;
}

}  // namespace

RadialOperator build_radial_hamiltonian(const TrapConfig& config, const RadialProblem& problem) {
  config.validate();
  check_grid(config, problem);
  return problem.model == RadialModel::flux_line ? build_flux_line(config, problem)
                                                 : build_finite_solenoid(config, problem);
}

SectorResult eigensolve(const TrapConfig& config, const RadialOperator& op, int k, double tail_threshold) {
  const int m = op.problem.m;
  const auto n = static_cast<lapack_int>(op.diagonal.size());
  if (k < 1 || k > n) throw std::invalid_argument("eigenpair count must be in [1, N]");

  std::vector<double> d = op.diagonal;
  std::vector<double> e(op.off_diagonal);
  e.push_back(0.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, k, 0.0,
                                         &found, w.data(), z.data(), n, support.data());
  if (info != 0) throw NumericalFailure(m, "tridiagonal eigensolver returned info=" + std::to_string(info));
  if (found != k) throw NumericalFailure(m, "eigensolver found " + std::to_string(found) + " of " + std::to_string(k));

  SectorResult out;
  out.m = m;
  out.model = op.problem.model;
  out.R = op.problem.R;
  out.N = op.problem.N;
  out.radius = op.radius;
  const double trap = 0.5 * config.mu * config.omega_P * config.omega_P;
  const double tail_start = op.problem.model == RadialModel::flux_line
                                ? 0.9 * op.problem.R
                                : config.a + 0.9 * (op.problem.R - config.a);
  for (int j = 0; j < k; ++j) {
    std::vector<double> v(z.begin() + static_cast<std::ptrdiff_t>(j) * n,
                          z.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
    const auto peak = std::max_element(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    if (*peak < 0.0) {
      for (double& x : v) x = -x;
    }
    StateObservables s;
    s.n = j;
    s.energy = w[static_cast<std::size_t>(j)];
    double tail = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double p2 = v[i] * v[i];
      s.norm += p2;
      s.rho2 += p2 * op.rho2[i];
      if (op.radius[i] > tail_start) tail += p2;
    }
    if (!std::isfinite(s.energy) || !std::isfinite(s.rho2)) throw NumericalFailure(m, "non-finite eigenpair");
    if (tail > tail_threshold) throw GridTooSmall(m, j, tail, op.problem.R);
    s.kinetic = s.energy - trap * s.rho2;
    out.states.push_back(s);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

SectorResult solve_sector(const TrapConfig& config, int m, int k, const SolverOptions& options, double twist) {
  RadialProblem coarse = make_problem(config, m, k, options);
  coarse.twist = twist;
  if (!options.richardson) {
    return eigensolve(config, build_radial_hamiltonian(config, coarse), k, options.tail_threshold);
  }
  RadialProblem fine = coarse;
  fine.N = 2 * coarse.N;
  const SectorResult lo = eigensolve(config, build_radial_hamiltonian(config, coarse), k, options.tail_threshold);
  SectorResult hi = eigensolve(config, build_radial_hamiltonian(config, fine), k, options.tail_threshold);
  const double trap = 0.5 * config.mu * config.omega_P * config.omega_P;
  for (std::size_t j = 0; j < hi.states.size(); ++j) {
    auto& s = hi.states[j];
    s.energy = (4.0 * s.energy - lo.states[j].energy) / 3.0;
    s.rho2 = (4.0 * s.rho2 - lo.states[j].rho2) / 3.0;
    s.kinetic = s.energy - trap * s.rho2;
  }
  hi.extrapolated = true;
  return hi;
}

std::vector<SectorResult> solve_sectors(const TrapConfig& config, const std::vector<int>& ms, int k,
                                        const SolverOptions& options, unsigned threads) {
  return support::parallel_map<SectorResult>(ms.size(), threads,
                                             [&](std::size_t i) { return solve_sector(config, ms[i], k, options); });
}

double fock_darwin_energy(const TrapConfig& config, int n, int m, int s) {
  const double lambda = m + s * config.alpha;
  return config.omega_tilde() * (2.0 * n + std::abs(lambda) + 1.0) + s * config.omega_c * lambda / 2.0;
}

double axial_energy(const TrapConfig& config, int n) { return 2.0 * config.omega_P * (n + 0.5); }

}  // namespace abtrap::spectral
