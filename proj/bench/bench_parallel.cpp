// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "semolab/benchmarks.hpp"
#include "semolab/experiments.hpp"

namespace {

semolab::ExperimentConfig grid_config() {
    semolab::ExperimentConfig config;
    config.benchmarks = {semolab::BenchmarkKind::Cocz, semolab::BenchmarkKind::Omm};
    config.algorithm = semolab::AlgorithmSpec::gsemo();
    config.n_grid = {16, 24, 32};
    config.trials_per_cell = 8;
    config.master_seed = 42;
    return config;
}

void BM_RunGridParallel(benchmark::State& state) {
    const auto config = grid_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(semolab::run_grid(config));
}
BENCHMARK(BM_RunGridParallel)->Unit(benchmark::kMillisecond);

void BM_RunGridSerial(benchmark::State& state) {
    const auto config = grid_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(semolab::run_grid_serial(config));
}
BENCHMARK(BM_RunGridSerial)->Unit(benchmark::kMillisecond);

void BM_BruteForceParallel(benchmark::State& state) {
    const semolab::BenchmarkSpec spec{semolab::BenchmarkKind::Ojzj, static_cast<std::size_t>(state.range(0)), 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(semolab::brute_force_front(spec));
}
BENCHMARK(BM_BruteForceParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_BruteForceSerial(benchmark::State& state) {
    const semolab::BenchmarkSpec spec{semolab::BenchmarkKind::Ojzj, static_cast<std::size_t>(state.range(0)), 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(semolab::brute_force_front_serial(spec));
}
BENCHMARK(BM_BruteForceSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
