// Serial reference versus OpenMP sweep kernels on the grids used by the CLI.

#include <benchmark/benchmark.h>

#include <vector>

#include "pertlab/sweep.hpp"

using namespace pertlab;

namespace {

const PerturbationSeries& quartic() {
  static const auto s = build_series(RationalPoly::monomial(1, 4), 3);
  return s;
}

std::vector<real> cutoff_grid(std::size_t points) {
  std::vector<real> xs;
  for (std::size_t i = 0; i < points; ++i)
    xs.push_back(3 + 7 * static_cast<real>(i) / static_cast<real>(points - 1));
  return xs;
}

std::vector<real> sigma_grid(std::size_t points) {
  std::vector<real> sigmas;
  real s = 1e-2;
  for (std::size_t i = 0; i < points; ++i, s *= 0.5) sigmas.push_back(s);
  return sigmas;
}

void BM_ScRows(benchmark::State& state, sweep::Execution exec) {
  const auto xs = cutoff_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep::sc_rows(3, xs, quartic(), {}, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GhostRows(benchmark::State& state, sweep::Execution exec) {
  const auto sigmas = sigma_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep::ghost_rows(3, sigmas, 8, quartic(), {}, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ScRows, serial, sweep::Execution::serial)->Arg(16)->Arg(64)->UseRealTime();
BENCHMARK_CAPTURE(BM_ScRows, parallel, sweep::Execution::parallel)->Arg(16)->Arg(64)->UseRealTime();
BENCHMARK_CAPTURE(BM_GhostRows, serial, sweep::Execution::serial)->Arg(16)->Arg(64)->UseRealTime();
BENCHMARK_CAPTURE(BM_GhostRows, parallel, sweep::Execution::parallel)
    ->Arg(16)
    ->Arg(64)
    ->UseRealTime();

BENCHMARK_MAIN();
