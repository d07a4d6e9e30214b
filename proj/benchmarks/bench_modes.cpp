// Compares the serial reference path against the OpenMP path of the two
// trial-parallel experiment harnesses on the bundled 3-layer complex.

#include <benchmark/benchmark.h>

#include <thread>

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/fixtures.hpp"

namespace {

const cmx::CellMultiComplex& f3() {
    static cmx::CellMultiComplex X = cmx::build_complex(cmx::fixtures::f3());
    return X;
}

int bench_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

void bm_denoise(benchmark::State& state, cmx::ExecMode mode, int threads) {
    const auto& X = f3();
    const std::vector<double> snr{0.0, 10.0, 20.0};
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto report = cmx::denoise_experiment(X, 2, 3, cmx::Perspective::from_ell, trials, snr,
                                              7, {}, mode, threads);
        benchmark::DoNotOptimize(report.points.data());
    }
    state.SetItemsProcessed(state.iterations() * trials);
}

void bm_sparsity(benchmark::State& state, cmx::ExecMode mode, int threads) {
    const auto& X = f3();
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto report = cmx::sparsity_experiment(X, 2, 3, cmx::Perspective::from_ell, trials, {}, 7,
                                               mode, threads);
        benchmark::DoNotOptimize(report.rows.data());
    }
    state.SetItemsProcessed(state.iterations() * trials);
}

void denoise_serial(benchmark::State& state) { bm_denoise(state, cmx::ExecMode::serial, 1); }
void denoise_parallel(benchmark::State& state) {
    bm_denoise(state, cmx::ExecMode::parallel, bench_threads());
}
void sparsity_serial(benchmark::State& state) { bm_sparsity(state, cmx::ExecMode::serial, 1); }
void sparsity_parallel(benchmark::State& state) {
    bm_sparsity(state, cmx::ExecMode::parallel, bench_threads());
}

BENCHMARK(denoise_serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(denoise_parallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(sparsity_serial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(sparsity_parallel)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
