#include <benchmark/benchmark.h>

#include <random>

#include "striplab/decay.hpp"
#include "striplab/exact.hpp"
#include "striplab/solver.hpp"
#include "striplab/spectral.hpp"

using namespace striplab;

static void BM_shooting_spectrum(benchmark::State& state) {
  const auto op = make_asymptotic_operator(-10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectrum_shooting(op, -7.0, 7.0));
}
BENCHMARK(BM_shooting_spectrum);

static void BM_fd_spectrum(benchmark::State& state) {
  const auto op = make_asymptotic_operator(-2.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_fd(op, n, -7.0, 7.0));
}
BENCHMARK(BM_fd_spectrum)->Arg(50)->Arg(100)->Arg(200);

static void BM_residual_assembly(benchmark::State& state) {
  const FieldGrid g = sample_flattened_strip(0.2, 4.0, 10.0, 120, 16);
  const StructureField f = flattened_strip_field(0.2);
  SolverConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_residual(g, f, cfg, &g));
}
BENCHMARK(BM_residual_assembly);

static void BM_solver_recovery(benchmark::State& state) {
  const FieldGrid oracle = sample_flattened_strip(0.2, 4.0, 7.0, 60, 12);
  const StructureField f = flattened_strip_field(0.2);
  SolverConfig cfg;
  FieldGrid init = oracle;
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  for (int i = 1; i < init.n_s - 1; ++i)
    for (int j = 0; j < init.n_t; ++j)
      for (int c = 0; c < 4; ++c) init.at(i, j)(c) += u(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(gauss_newton_solve(init, f, cfg, &oracle));
}
BENCHMARK(BM_solver_recovery);

static void BM_alpha_trace(benchmark::State& state) {
  const FieldGrid g = sample_flattened_strip(0.2, 4.5, 10.5, 385, 65);
  const StructureField f = flattened_strip_field(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_trace(g, f));
}
BENCHMARK(BM_alpha_trace);

BENCHMARK_MAIN();
