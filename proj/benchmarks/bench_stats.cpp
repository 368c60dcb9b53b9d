#include <benchmark/benchmark.h>

#include <random>

#include "rngprobe/stats.hpp"

using namespace rngprobe;

namespace {

stats::Dataset normal_sample(unsigned seed, std::size_t n) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    stats::Dataset d;
    d.values.resize(n);
    for (auto& v : d.values) v = dist(gen);
    return d;
}

void BM_KsTwoSample(benchmark::State& state) {
    const auto a = normal_sample(1, 100);
    const auto b = normal_sample(2, 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::ks_two_sample(a, b));
    }
}
BENCHMARK(BM_KsTwoSample);

void BM_ShapiroWilk(benchmark::State& state) {
    const auto a = normal_sample(3, 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::shapiro_wilk(a));
    }
}
BENCHMARK(BM_ShapiroWilk);

void BM_WelchT(benchmark::State& state) {
    const auto a = normal_sample(4, 100);
    const auto b = normal_sample(5, 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::welch_t(a, b));
    }
}
BENCHMARK(BM_WelchT);

}  // namespace

BENCHMARK_MAIN();
