#include <benchmark/benchmark.h>

#include <random>

#include "rngprobe/numtheory.hpp"

using namespace rngprobe;
using nt::wide;

namespace {

void BM_Mulmod64(benchmark::State& state) {
    std::mt19937_64 gen(1);
    const std::uint64_t n = 0xffffffffffffffc5ull;  // largest 64-bit prime
    std::uint64_t a = gen() % n, b = gen() % n;
    for (auto _ : state) {
        a = static_cast<std::uint64_t>(nt::mulmod(a, b, n));
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_Mulmod64);

void BM_MulmodWide(benchmark::State& state) {
    const wide n = nt::wide_from_string("99999999999999999999");
    wide a = nt::wide_from_string("87654321098765432109");
    const wide b = nt::wide_from_string("12345678901234567890");
    for (auto _ : state) {
        a = nt::mulmod(a + 1, b, n);
        benchmark::DoNotOptimize(&a);
    }
}
BENCHMARK(BM_MulmodWide);

void BM_SsPredicate561(benchmark::State& state) {
    wide a = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nt::ss_predicate(561, 1 + (a++ % 560)));
    }
}
BENCHMARK(BM_SsPredicate561);

void BM_CsParams(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(nt::cs_params(561));
    }
}
BENCHMARK(BM_CsParams);

void BM_CarmichaelScan(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(nt::carmichael_up_to(static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_CarmichaelScan)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
