#include <benchmark/benchmark.h>

#include "survest/estimators.hpp"
#include "survest/kahan.hpp"
#include "survest/exact.hpp"
#include "survest/montecarlo.hpp"
#include "survest/population.hpp"
#include "survest/rng.hpp"

using namespace survest;

namespace {

Population make_population(int N) {
    SplitMix64 rng(42);
    const auto unit = [&] { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; };
    Population pop;
    for (int i = 0; i < N; ++i) {
        pop.x.push_back(1.0 + 9.0 * unit());
        pop.y.push_back(0.5 + 19.5 * unit());
    }
    return pop;
}

void BM_SampleStats(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const Population pop = make_population(N);
    const int n = N / 10;
    const DesignContext ctx{N, n, kahan_mean(pop.x), 200.0};
    const Sample s = draw_sample(pop, n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_sample_stats(pop, s, ctx));
    }
}
BENCHMARK(BM_SampleStats)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ExactDistribution(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const Population pop = make_population(N);
    const int n = N / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            exact_distribution(pop, n, EstimatorKind::UnbiasedDu, TransformConfig{50.0}));
    }
}
BENCHMARK(BM_ExactDistribution)->Arg(10)->Arg(16)->Arg(20);

void BM_Simulate(benchmark::State& state) {
    const Population pop = make_population(500);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(pop, 50, {EstimatorKind::UnbiasedDu},
                                          TransformConfig{200.0},
                                          MCOptions{static_cast<std::size_t>(state.range(0)),
                                                    7, static_cast<int>(state.range(1))}));
    }
}
BENCHMARK(BM_Simulate)->Args({20000, 1})->Args({20000, 4});

}  // namespace

BENCHMARK_MAIN();
