#include "abtrap/secular/secular.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "abtrap/algebra/phase_space.hpp"

namespace abtrap::secular {

using algebra::RationalFunction;
using algebra::var;

double PaulDrive::secular_base(double mu) const {
  return std::sqrt(std::numbers::sqrt2 * std::abs(V) / (mu * d * d));
}

double PaulDrive::omega_P(double mu) const {
  const double big = secular_base(mu);
  return big * big / (4.0 * Omega_rf);
}

double PaulDrive::adiabaticity(double mu) const { return Omega_rf / secular_base(mu); }

void PaulDrive::validate(double mu) const {
  if (!(d > 0.0) || !std::isfinite(d)) throw DriveError("drive: d must be positive");
  if (!(Omega_rf > 0.0) || !std::isfinite(Omega_rf)) throw DriveError("drive: Omega_rf must be positive");
  if (!std::isfinite(V)) throw DriveError("drive: V must be finite");
  if (active() && adiabaticity(mu) < 10.0) {
    throw DriveError("drive: Omega_rf / Omega = " + std::to_string(adiabaticity(mu)) + " is below 10");
  }
}

PaulDrive PaulDrive::for_secular_frequency(double mu, double omega_P, double adiabaticity, double d) {
  PaulDrive p;
  p.d = d;
  p.Omega_rf = 4.0 * omega_P * adiabaticity * adiabaticity;
  const double big = p.Omega_rf / adiabaticity;
  p.V = mu * d * d * big * big / std::numbers::sqrt2;
  return p;
}

namespace {

const algebra::Symbol& z_symbol() {
  static const algebra::Symbol s("z");
  return s;
}

RationalFunction spatial_rho2_z(long zweight) {
  const RationalFunction x(algebra::x1()), y(algebra::x2()), z(z_symbol());
  return x * x + y * y + RationalFunction(zweight) * z * z;
}

}  // namespace

RationalFunction quadrupole_potential() {
  const RationalFunction z(z_symbol());
  const RationalFunction rho2 = spatial_rho2_z(0);
  return var("V") * (z * z - RationalFunction(algebra::Rational(1, 2)) * rho2) /
         (RationalFunction(2L) * var("d").pow(2));
}

VeffReport effective_potential_check(const RationalFunction& u) {
  const std::array<algebra::Symbol, 3> xs = {algebra::x1(), algebra::x2(), z_symbol()};
  for (const auto& s : xs) {
    if (u.denominator().contains(s)) throw NotQuadrupole("potential is not polynomial in x1, x2, z");
  }
  const algebra::Symbol t("t_scale");
  algebra::Bindings scaled;
  for (const auto& s : xs) scaled.emplace(s, RationalFunction(t) * RationalFunction(s));
  if (algebra::substitute(u, scaled) != RationalFunction(t).pow(2) * u || u.is_zero()) {
    throw NotQuadrupole("potential is not a quadratic form in x1, x2, z");
  }
  RationalFunction laplacian;
  for (const auto& s : xs) laplacian += u.derivative(s).derivative(s);
  if (!laplacian.is_zero()) throw NotQuadrupole("potential is not harmonic");
  const RationalFunction rotation = RationalFunction(xs[0]) * u.derivative(xs[1]) - RationalFunction(xs[1]) * u.derivative(xs[0]);
  if (!rotation.is_zero()) throw NotQuadrupole("potential is not symmetric about the z axis");

  VeffReport rep;
  rep.potential = u;
  const RationalFunction mu = var(algebra::param::mu);
  const RationalFunction rf = var("Omega_rf");
  for (const auto& s : xs) rep.effective += u.derivative(s).pow(2);
  rep.effective /= RationalFunction(4L) * mu * rf.pow(2);
  // omega_P^2 = Omega^4 / (16 Omega_rf^2) with Omega^4 = 2 V^2 / (mu^2 d^4)
  const RationalFunction omega_p2 =
      RationalFunction(2L) * var("V").pow(2) / (mu.pow(2) * var("d").pow(4) * RationalFunction(16L) * rf.pow(2));
  rep.expected = RationalFunction(algebra::Rational(1, 2)) * mu * omega_p2 * spatial_rho2_z(4);
  rep.passed = rep.effective == rep.expected;
  return rep;
}

double max_step(const TrapConfig& config, const PaulDrive& drive) {
  double fastest = std::abs(config.omega_c);
  if (config.a > 0.0) fastest = std::max(fastest, std::abs(config.omega_c + config.omega_0()));
  if (drive.active()) fastest = std::max({fastest, drive.Omega_rf, 2.0 * drive.omega_P(config.mu)});
  if (fastest == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / (40.0 * fastest);
}

double canonical_angular_momentum(const ClassicalState& s, const TrapConfig& config) {
  const double rho2 = s.x[0] * s.x[0] + s.x[1] * s.x[1];
  const double flux = s.exterior(config.a) ? config.alpha : 0.5 * config.mu * config.omega_0() * rho2;
  return config.mu * (s.x[0] * s.v[1] - s.x[1] * s.v[0]) + 0.5 * config.mu * config.omega_c * rho2 + flux;
}

namespace {

struct Derivative {
  std::array<double, 3> dx;
  std::array<double, 3> dv;
};

class Force {
 public:
  Force(const TrapConfig& c, const PaulDrive& drive, ForceModel model)
      : c_(c), drive_(drive), model_(model), omega_p_(drive.active() ? drive.omega_P(c.mu) : 0.0) {}

  Derivative operator()(const std::array<double, 3>& x, const std::array<double, 3>& v, double t, bool inside) const {
    std::array<double, 3> f{};
    if (drive_.active()) {
      if (model_ == ForceModel::driven) {
        const double k = std::cos(drive_.Omega_rf * t) * drive_.V / (2.0 * drive_.d * drive_.d);
        f = {k * x[0], k * x[1], -2.0 * k * x[2]};
      } else {
        const double k = c_.mu * omega_p_ * omega_p_;
        f = {-k * x[0], -k * x[1], -4.0 * k * x[2]};
      }
    }
    double b = c_.mu * c_.omega_c;
    if (inside) b += c_.mu * c_.omega_0();
    f[0] += v[1] * b;
    f[1] -= v[0] * b;
    return {v, {f[0] / c_.mu, f[1] / c_.mu, f[2] / c_.mu}};
  }

  double secular_energy(const std::array<double, 3>& x, const std::array<double, 3>& v) const {
    const double kin = 0.5 * c_.mu * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return kin + 0.5 * c_.mu * omega_p_ * omega_p_ * (x[0] * x[0] + x[1] * x[1] + 4.0 * x[2] * x[2]);
  }

 private:
  const TrapConfig& c_;
  const PaulDrive& drive_;
  ForceModel model_;
  double omega_p_;
};

std::array<double, 3> axpy(const std::array<double, 3>& y, double a, const std::array<double, 3>& x) {
  return {y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2]};
}

bool finite(const ClassicalState& s) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.v[i])) return false;
  }
  return true;
}

std::string describe(const ClassicalState& s) {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << s.t << " x=(" << s.x[0] << ", " << s.x[1] << ", " << s.x[2] << ") v=(" << s.v[0] << ", " << s.v[1]
     << ", " << s.v[2] << ")";
  return os.str();
}

ClassicalState rk4(const Force& force, const ClassicalState& s, double t, double h, bool inside) {
  const Derivative k1 = force(s.x, s.v, t, inside);
  const Derivative k2 = force(axpy(s.x, h / 2, k1.dx), axpy(s.v, h / 2, k1.dv), t + h / 2, inside);
  const Derivative k3 = force(axpy(s.x, h / 2, k2.dx), axpy(s.v, h / 2, k2.dv), t + h / 2, inside);
  const Derivative k4 = force(axpy(s.x, h, k3.dx), axpy(s.v, h, k3.dv), t + h, inside);
  ClassicalState out = s;
  for (int c = 0; c < 3; ++c) {
    out.x[c] += h / 6 * (k1.dx[c] + 2 * k2.dx[c] + 2 * k3.dx[c] + k4.dx[c]);
    out.v[c] += h / 6 * (k1.dv[c] + 2 * k2.dv[c] + 2 * k3.dv[c] + k4.dv[c]);
  }
  return out;
}

}  // namespace

Trajectory integrate_trajectory(const ClassicalState& start, const TrapConfig& config, const PaulDrive& drive,
                                const IntegrationOptions& options) {
  config.validate();
  if (drive.active()) drive.validate(config.mu);
  if (!(options.dt > 0.0)) throw StepTooLarge("time step must be positive");
  if (options.dt > max_step(config, drive) * (1.0 + 1e-12)) {
    throw StepTooLarge("time step " + std::to_string(options.dt) + " exceeds " +
                       std::to_string(max_step(config, drive)));
  }
  if (!(options.duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (options.stride == 0) throw std::invalid_argument("stride must be at least 1");
  if (!finite(start)) throw IntegrationFailure("non-finite initial state: " + describe(start));

  const Force force(config, drive, options.model);
  const double h = options.dt;
  const auto steps = static_cast<std::size_t>(std::llround(options.duration / h));
  const bool driven = drive.active() && options.model == ForceModel::driven;
  const std::size_t window =
      driven ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / (drive.Omega_rf * h))))
             : 1;

  Trajectory out;
  out.sample_interval = h * static_cast<double>(options.stride);
  out.drive_frequency = drive.active() ? drive.Omega_rf : 0.0;
  out.samples.reserve(steps / options.stride + 1);
  if (!options.average_window) out.samples.push_back(start);

  ClassicalState s = start;
  ClassicalState block{};
  std::array<double, 3> xs{}, vs{};
  std::size_t in_block = 0, in_window = 0;
  double reference = std::numeric_limits<double>::quiet_NaN();
  double drift = 0.0;

  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = start.t + static_cast<double>(i - 1) * h;
    const bool inside = !s.exterior(config.a);
    ClassicalState next = rk4(force, s, t, h, inside);
    if (config.a > 0.0 && next.exterior(config.a) == inside) {
      // split the step where the orbit meets the wall; each region's force stays smooth
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rk4(force, s, t, mid * h, inside).exterior(config.a) == inside ? hi : lo) = mid;
      }
      const ClassicalState wall = rk4(force, s, t, hi * h, inside);
      next = rk4(force, wall, t + hi * h, (1.0 - hi) * h, !inside);
    }
    s = next;
    s.t = start.t + static_cast<double>(i) * h;
    if (!finite(s)) throw IntegrationFailure("trajectory became non-finite at " + describe(s));
    if (!s.exterior(config.a)) out.left_exterior = true;

    xs = axpy(xs, 1.0, s.x);
    vs = axpy(vs, 1.0, s.v);
    if (++in_window == window) {
      const double w = 1.0 / static_cast<double>(window);
      const double e = force.secular_energy({xs[0] * w, xs[1] * w, xs[2] * w}, {vs[0] * w, vs[1] * w, vs[2] * w});
      if (std::isnan(reference)) {
        reference = e;
      } else {
        const double scale = reference != 0.0 ? std::abs(reference) : 1.0;
        drift = std::max(drift, std::abs(e - reference) / scale);
      }
      xs = {};
      vs = {};
      in_window = 0;
    }

    if (options.average_window) {
      block.x = axpy(block.x, 1.0, s.x);
      block.v = axpy(block.v, 1.0, s.v);
      block.t += s.t;
      if (++in_block == options.stride) {
        const double w = 1.0 / static_cast<double>(options.stride);
        ClassicalState mean;
        for (int c = 0; c < 3; ++c) {
          mean.x[c] = block.x[c] * w;
          mean.v[c] = block.v[c] * w;
        }
        mean.t = block.t * w;
        out.samples.push_back(mean);
        block = ClassicalState{};
        in_block = 0;
      }
    } else if (i % options.stride == 0) {
      out.samples.push_back(s);
    }
  }
  out.secular_energy_drift = drift;
  return out;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Fit {
  double explained = 0.0;
  double amplitude2 = 0.0;
  double coef[3] = {};
};

// least squares y ~ c0 + c1 cos(w t) + c2 sin(w t)
Fit fit_tone(const std::vector<double>& y, double dt, double omega) {
  double g[3][3] = {};
  double b[3] = {};
  const double cs = std::cos(omega * dt), sn = std::sin(omega * dt);
  double c = 1.0, s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i % 1024 == 0) {
      c = std::cos(omega * dt * static_cast<double>(i));
      s = std::sin(omega * dt * static_cast<double>(i));
    }
    const double basis[3] = {1.0, c, s};
    for (int r = 0; r < 3; ++r) {
      b[r] += basis[r] * y[i];
      for (int q = r; q < 3; ++q) g[r][q] += basis[r] * basis[q];
    }
    const double next = c * cs - s * sn;
    s = s * cs + c * sn;
    c = next;
  }
  for (int r = 0; r < 3; ++r) {
    for (int q = 0; q < r; ++q) g[r][q] = g[q][r];
  }
  // Gaussian elimination, the normal matrix is positive definite
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int q = 0; q < 3; ++q) m[r][q] = g[r][q];
    m[r][3] = b[r];
  }
  for (int p = 0; p < 3; ++p) {
    for (int r = p + 1; r < 3; ++r) {
      const double f = m[r][p] / m[p][p];
      for (int q = p; q < 4; ++q) m[r][q] -= f * m[p][q];
    }
  }
  double coef[3];
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int q = r + 1; q < 3; ++q) acc -= m[r][q] * coef[q];
    coef[r] = acc / m[r][r];
  }
  Fit f;
  f.explained = coef[0] * b[0] + coef[1] * b[1] + coef[2] * b[2];
  f.amplitude2 = coef[1] * coef[1] + coef[2] * coef[2];
  std::copy(coef, coef + 3, f.coef);
  return f;
}

}  // namespace

FrequencyEstimate extract_secular_frequency(const Trajectory& trajectory, std::size_t component) {
  if (component > 2) throw std::invalid_argument("component must be 0, 1 or 2");
  const std::size_t n = trajectory.samples.size();
  if (n < 16) throw NoSecularPeak("trajectory has fewer than 16 samples");
  const double dt = trajectory.sample_interval;

  std::vector<double> y(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += (y[i] = trajectory.samples[i].x[component]);
  mean /= static_cast<double>(n);
  double total = 0.0;
  for (double& v : y) {
    v -= mean;
    total += v * v;
  }
  if (!(total > 0.0)) throw NoSecularPeak("signal is constant");

  std::size_t m = 1;
  while (m < n) m <<= 1;
  m <<= 1;
  std::vector<double> in(m, 0.0);
  std::copy(y.begin(), y.end(), in.begin());
  std::vector<fftw_complex> spec(m / 2 + 1);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.data(), spec.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(m) * dt);
  const double nyquist = std::numbers::pi / dt;
  const double band = trajectory.drive_frequency > 0.0 ? std::min(0.5 * trajectory.drive_frequency, nyquist) : nyquist;
  auto power = [&](std::size_t k) { return spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1]; };

  std::size_t best = 0;
  for (std::size_t k = 1; k < spec.size() && static_cast<double>(k) * bin < band; ++k) {
    if (best == 0 || power(k) > power(best)) best = k;
  }
  if (best < 1 || best + 1 >= spec.size() || !(power(best) > power(best - 1) && power(best) > power(best + 1))) {
    throw NoSecularPeak("no spectral peak below " + std::to_string(band));
  }
  const double p0 = power(best - 1), p1 = power(best), p2 = power(best + 1);
  const double shift = 0.5 * (p0 - p2) / (p0 - 2.0 * p1 + p2);

  FrequencyEstimate est;
  est.band_limit = band;
  est.samples = n;
  est.interpolated = (static_cast<double>(best) + shift) * bin;

  double lo = std::max(est.interpolated - bin, 0.5 * bin), hi = est.interpolated + bin;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - golden * (hi - lo), d = lo + golden * (hi - lo);
  double fc = fit_tone(y, dt, c).explained, fd = fit_tone(y, dt, d).explained;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - golden * (hi - lo);
      fc = fit_tone(y, dt, c).explained;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + golden * (hi - lo);
      fd = fit_tone(y, dt, d).explained;
    }
  }
  est.omega = 0.5 * (lo + hi);
  const Fit fit = fit_tone(y, dt, est.omega);
  const double span = static_cast<double>(n) * dt;
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = est.omega * dt * static_cast<double>(i);
    const double r = y[i] - fit.coef[0] - fit.coef[1] * std::cos(t) - fit.coef[2] * std::sin(t);
    residual += r * r;
  }
  residual /= static_cast<double>(n - 3);
  est.uncertainty = std::sqrt(12.0 * residual / (fit.amplitude2 * static_cast<double>(n))) / span;
  if (est.omega * span < 2.0 * std::numbers::pi * 20.0) {
    throw std::invalid_argument("trajectory covers fewer than 20 periods of the detected frequency");
  }
  return est;
}

}  // namespace abtrap::secular
