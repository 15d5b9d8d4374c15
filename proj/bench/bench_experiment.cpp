#include <benchmark/benchmark.h>

#include "hsgibbs/harness.hpp"

using namespace hs;

namespace {

ExperimentConfig bench_config() {
  ExperimentConfig c;
  c.n = 100;
  c.p = 25;
  c.dataset_count = 2;
  c.seeds = {11, 12};
  c.iterations = 300;
  c.burnin = 50;
  return c;
}

void BM_experiment_serial(benchmark::State& st) {
  const ExperimentConfig c = bench_config();
  for (auto _ : st) benchmark::DoNotOptimize(run_cells(c, false).cells.size());
}

void BM_experiment_parallel(benchmark::State& st) {
  const ExperimentConfig c = bench_config();
  for (auto _ : st) benchmark::DoNotOptimize(run_cells(c, true).cells.size());
}

}  // namespace

BENCHMARK(BM_experiment_serial)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_experiment_parallel)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
