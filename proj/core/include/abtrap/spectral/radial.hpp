#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abtrap/trap_config.hpp"

namespace abtrap::spectral {

/// Sign s in the centrifugal term (m + s beta)^2 / rho^2 when m is the
/// eigenvalue of eps_ij x_i p_j and the vector potential uses the same eps.
/// Pinned against the Cartesian oracle in the tests.
inline constexpr int kRotationSign = -1;

enum class RadialModel {
  flux_line,        ///< a -> 0 at fixed alpha, 0 < rho <= R
  finite_solenoid,  ///< hard wall at rho = a, a <= rho <= R
};

const char* to_string(RadialModel model);

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested states leak past the outer radius.
class GridTooSmall : public std::runtime_error {
 public:
  GridTooSmall(int m, int state, double tail_mass, double R);
  int m() const noexcept { return m_; }

 private:
  int m_;
};

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(int m, const std::string& what);
  int m() const noexcept { return m_; }

 private:
  int m_;
};

struct SolverOptions {
  int N = 4000;
  /// Outer radius; chosen from the oscillator length when absent.
  std::optional<double> R;
  /// Combine N and 2N solutions to cancel the h^2 error.
  bool richardson = true;
  /// Largest admissible probability in the outermost 10% of the domain.
  double tail_threshold = 1e-10;
  RadialModel model = RadialModel::flux_line;
};

struct RadialProblem {
  int m = 0;
  RadialModel model = RadialModel::flux_line;
  double R = 0.0;
  int N = 4000;
  int s = kRotationSign;
  /// Extra continuous shift of the angular index, used to realise twisted
  /// boundary conditions with the flux removed from the Hamiltonian.
  double twist = 0.0;
};

/// Effective centrifugal index lambda = m + twist + s alpha.
double angular_index(const TrapConfig& config, const RadialProblem& problem);

/// Default outer radius for the lowest k states of sector m.
double default_outer_radius(const TrapConfig& config, int m, int k, RadialModel model);

RadialProblem make_problem(const TrapConfig& config, int m, int k, const SolverOptions& options);

/// Symmetric tridiagonal operator plus what is needed to read observables
/// off its normalized eigenvectors v:  <rho^2> = sum v_i^2 rho2_i.
struct RadialOperator {
  RadialProblem problem;
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  std::vector<double> radius;  ///< node positions
  std::vector<double> rho2;    ///< second moment attached to each node
};

/// FluxLine: finite volumes for g = psi / rho^nu, nu = |lambda|, with exact
/// cell masses and conductances.  FiniteSolenoid: central differences for
/// u = sqrt(rho) psi on [a, R] with Dirichlet ends.
RadialOperator build_radial_hamiltonian(const TrapConfig& config, const RadialProblem& problem);

struct StateObservables {
  int n = 0;
  double energy = 0.0;
  double rho2 = 0.0;
  /// <E_k> = E - mu omega_P^2 <rho^2> / 2
  double kinetic = 0.0;
  double norm = 0.0;
};

struct SectorResult {
  int m = 0;
  RadialModel model = RadialModel::flux_line;
  double R = 0.0;
  int N = 0;
  bool extrapolated = false;
  std::vector<StateObservables> states;
  std::vector<double> radius;
  /// Normalized eigenvectors on `radius` (finest grid), one per state.
  std::vector<std::vector<double>> vectors;
};

/// Lowest k eigenpairs of one operator, ascending; eigenvector signs fixed so
/// the largest component is positive.
SectorResult eigensolve(const TrapConfig& config, const RadialOperator& op, int k, double tail_threshold);

/// One sector, with Richardson extrapolation when requested.
SectorResult solve_sector(const TrapConfig& config, int m, int k, const SolverOptions& options,
                          double twist = 0.0);

/// Independent sectors on up to `threads` workers, returned in the order of `ms`.
std::vector<SectorResult> solve_sectors(const TrapConfig& config, const std::vector<int>& ms, int k,
                                        const SolverOptions& options, unsigned threads);

/// omega~ (2n + |lambda| + 1) + s omega_c lambda / 2 with lambda = m + s alpha.
double fock_darwin_energy(const TrapConfig& config, int n, int m, int s = kRotationSign);

/// omega_z (n + 1/2) with omega_z = 2 omega_P.
double axial_energy(const TrapConfig& config, int n);

}  // namespace abtrap::spectral
