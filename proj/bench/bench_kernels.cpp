// Serial reference kernels against their OpenMP counterparts. The second
// benchmark argument is the thread count for the parallel variants.
#include <algorithm>

#include <benchmark/benchmark.h>

#include "spectra/dirichlet.hpp"
#include "spectra/experiments.hpp"
#include "spectra/parallel.hpp"
#include "spectra/spectral_stats.hpp"
#include "spectra/zeta.hpp"

using namespace spectra;

namespace {

const EnsembleConfig kConfig{200, 32, EntryDistribution::StandardGaussian, 1};

std::vector<double> sorted_sample() {
    static const std::vector<double> values = [] {
        auto v = reference::density_experiment({400, 25, EntryDistribution::StandardGaussian, 5}).values;
        std::sort(v.begin(), v.end());
        return v;
    }();
    return values;
}

void BM_SpacingSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::spacing_experiment(kConfig));
}

void BM_SpacingParallel(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spacing_experiment(kConfig));
}

void BM_PairCorrelationSerial(benchmark::State& state) {
    const auto v = sorted_sample();
    const auto edges = Histogram::uniform(50, 0.0, 0.05).edges();
    for (auto _ : state) benchmark::DoNotOptimize(reference::pair_correlation(v, edges));
}

void BM_PairCorrelationParallel(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const auto v = sorted_sample();
    const auto edges = Histogram::uniform(50, 0.0, 0.05).edges();
    for (auto _ : state) benchmark::DoNotOptimize(pair_correlation(v, edges));
}

void BM_ZerosSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::compute_zeros(1000.0));
}

void BM_ZerosParallel(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_zeros(1000.0));
}

void BM_OneLevelSerial(benchmark::State& state) {
    const auto tf = TestFunction::fejer_two_pi(1.8);
    const auto primes = sieve(required_sieve_limit(10007, 1.8));
    for (auto _ : state) benchmark::DoNotOptimize(reference::one_level_density(10007, tf, primes));
}

void BM_OneLevelParallel(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const auto tf = TestFunction::fejer_two_pi(1.8);
    const auto primes = sieve(required_sieve_limit(10007, 1.8));
    for (auto _ : state) benchmark::DoNotOptimize(one_level_density(10007, tf, primes));
}

}  // namespace

BENCHMARK(BM_SpacingSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpacingParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PairCorrelationSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PairCorrelationParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ZerosSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ZerosParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OneLevelSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OneLevelParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
