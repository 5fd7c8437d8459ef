#include <benchmark/benchmark.h>

#include <numbers>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/algebra/phase_space.hpp"
#include "abtrap/reduction/dirac.hpp"
#include "abtrap/reduction/reduced_model.hpp"
#include "abtrap/report/config.hpp"
#include "abtrap/secular/secular.hpp"
#include "abtrap/spectral/analysis.hpp"

using namespace abtrap;

namespace {

TrapConfig flux_trap(double omega_c) {
  TrapConfig c;
  c.omega_P = 1.0;
  c.omega_c = omega_c;
  c.alpha = 0.25;
  return c;
}

void BM_DiracBracketFullTrap(benchmark::State& state) {
  const reduction::DiracStructure ds(
      reduction::kinetic_constraints(reduction::Orientation::standard, reduction::TrapLimit::full));
  const auto f = algebra::parse_expression("x1^2*p2 + 3*x2*p1 - p1*p2");
  const auto g = algebra::parse_expression("x2^2 - 2*x1*p2");
  for (auto _ : state) benchmark::DoNotOptimize(ds.bracket(f, g));
}
BENCHMARK(BM_DiracBracketFullTrap)->Unit(benchmark::kMicrosecond);

void BM_ReduceTrap(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduction::reduce_trap(reduction::Orientation::standard, reduction::TrapLimit::full));
  }
}
BENCHMARK(BM_ReduceTrap)->Unit(benchmark::kMillisecond);

void radial_sector(benchmark::State& state, bool richardson) {
  const auto c = flux_trap(10.0);
  spectral::SolverOptions o;
  o.N = static_cast<int>(state.range(0));
  o.richardson = richardson;
  for (auto _ : state) benchmark::DoNotOptimize(spectral::solve_sector(c, 1, 6, o));
  state.SetComplexityN(state.range(0));
}
void BM_RadialSector(benchmark::State& state) { radial_sector(state, false); }
void BM_RadialSectorRichardson(benchmark::State& state) { radial_sector(state, true); }
BENCHMARK(BM_RadialSector)->RangeMultiplier(2)->Range(500, 8000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);
BENCHMARK(BM_RadialSectorRichardson)
    ->RangeMultiplier(2)
    ->Range(500, 8000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_SectorSweepThreads(benchmark::State& state) {
  const auto c = flux_trap(50.0);
  spectral::SolverOptions o;
  const std::vector<int> ms = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral::solve_sectors(c, ms, 6, o, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_SectorSweepThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SecularIntegration(benchmark::State& state) {
  TrapConfig c;
  c.omega_P = 1.0;
  const auto d = secular::PaulDrive::for_secular_frequency(1.0, 1.0, static_cast<double>(state.range(0)));
  secular::ClassicalState s;
  s.x = {0.3, 0.0, 0.1};
  secular::IntegrationOptions o;
  o.duration = 2.0 * std::numbers::pi;
  o.dt = secular::max_step(c, d);
  o.stride = 40;
  o.average_window = true;
  for (auto _ : state) benchmark::DoNotOptimize(secular::integrate_trajectory(s, c, d, o));
  state.counters["steps"] = o.duration / o.dt;
}
BENCHMARK(BM_SecularIntegration)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ParseConfig(benchmark::State& state) {
  const std::string text =
      "[trap]\nomega_P = 1\nomega_c = 50\nalpha = 0.25\n[solver]\nN = 2000\nsectors = -2, -1, 0, 1, 2\n"
      "[sweep]\nratios = 10, 20, 50, 100\n";
  for (auto _ : state) benchmark::DoNotOptimize(report::config_hash(report::parse_config(text)));
}
BENCHMARK(BM_ParseConfig);

}  // namespace

BENCHMARK_MAIN();
