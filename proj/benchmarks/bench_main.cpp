// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/cone_profile.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/numerics.hpp"
#include "conespec/particular_solution.hpp"
#include "conespec/sl_engine.hpp"
#include "conespec/weiss_energy.hpp"

using namespace conespec;

namespace {

const ConeProfile& profile7() {
  static const ConeProfile p = solve_profile(7);
  return p;
}

void BM_SolveProfile(benchmark::State& state) {
  SolverConfig cfg;
  cfg.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile(7, cfg));
}
BENCHMARK(BM_SolveProfile)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_EigenK(benchmark::State& state) {
  const SLSpec spec = SLSpec::robin(profile7(), 5.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_k(spec, k));
}
BENCHMARK(BM_EigenK)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(assemble(profile7(), 18.0));
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_BoundaryModes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(boundary_modes(profile7(), 8));
}
BENCHMARK(BM_BoundaryModes)->Unit(benchmark::kMillisecond);

void BM_CauchyEuler(benchmark::State& state) {
  const auto grid = numerics::geometric_grid(1.0, 1048576.0, 16);
  for (auto _ : state) {
    CauchyEulerSolution u(7, 6.0, RadialSource::power(1.0, -1.7), 0.7, grid);
    benchmark::DoNotOptimize(u(1000.0));
  }
}
BENCHMARK(BM_CauchyEuler)->Unit(benchmark::kMicrosecond);

void BM_BuildUp(benchmark::State& state) {
  SourceSpec src;
  src.beta = 0.7;
  src.modes = {{0, Parity::Odd, 1.0}, {0, Parity::Even, 0.5}, {1, Parity::Odd, -0.8}};
  const auto bmodes = boundary_modes(profile7(), 8);
  SolverConfig cfg;
  cfg.r_max = 4096.0;
  for (auto _ : state) benchmark::DoNotOptimize(build_up(src, profile7(), bmodes, cfg, 4));
}
BENCHMARK(BM_BuildUp)->Unit(benchmark::kMillisecond);

void BM_Weiss(benchmark::State& state) {
  const auto u = AxisymField::cone(profile7());
  for (auto _ : state) benchmark::DoNotOptimize(weiss(u, 1.0));
}
BENCHMARK(BM_Weiss)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
