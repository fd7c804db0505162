#include "pulsecool/analysis.hpp"
#include "pulsecool/parallel.hpp"
#include "pulsecool/presets.hpp"

#include <benchmark/benchmark.h>

using namespace pulsecool;

namespace {

const std::vector<double> kLadder{1.0, 1.5, 2.5, 3.5, 5.0};

void BM_SweepSerial(benchmark::State& state) {
    const SystemParams p = figure_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(j_sweep_serial(p, kLadder, 20.0, preset_grid(1.0)));
}

void BM_SweepParallel(benchmark::State& state) {
    const SystemParams p = figure_params();
    set_worker_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(j_sweep(p, kLadder, 20.0, preset_grid(1.0)));
    state.counters["threads"] = static_cast<double>(worker_threads());
}

void BM_SimulateFig2c(benchmark::State& state) {
    const auto run = preset_runs("fig2c").front();
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate(run.params, run.envelope, run.grid));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateFig2c)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
