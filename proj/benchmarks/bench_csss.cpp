#include <benchmark/benchmark.h>

#include "rngprobe/csss.hpp"
#include "rngprobe/sources.hpp"

using namespace rngprobe;
using nt::wide;

namespace {

void BM_Csss12(benchmark::State& state) {
    const BitString s = sources::mt19937_bits(3, 1u << 20);
    const auto carmichael = nt::carmichael_up_to(1000000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(csss_test_1_2(BitReader(s), carmichael));
    }
}
BENCHMARK(BM_Csss12);

void BM_Csss3(benchmark::State& state) {
    const BitString s = sources::mt19937_bits(3, 1u << 20);
    const auto carmichael = nt::carmichael_up_to(1000000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(csss_test_3(BitReader(s), carmichael));
    }
}
BENCHMARK(BM_Csss3);

// One number per extraction path: the per-window cost dominates the whole
// pipeline, so these are the numbers that matter.
void BM_Csss4OneNumber(benchmark::State& state) {
    const BitString s = sources::mt19937_bits(3, 1u << 20);
    const auto numbers =
        nt::make_test_numbers(std::vector<wide>{static_cast<wide>(state.range(0))});
    for (auto _ : state) {
        benchmark::DoNotOptimize(csss_test_4(BitReader(s), numbers));
    }
    state.SetItemsProcessed(state.iterations() * ((1u << 20) - numbers[0].m_cs + 1));
}
BENCHMARK(BM_Csss4OneNumber)->Arg(9)->Arg(15)->Arg(21)->Arg(65)->Arg(561)
    ->Unit(benchmark::kMillisecond);

void BM_Csss4FullSet(benchmark::State& state) {
    const BitString s = sources::mt19937_bits(3, 1u << 20);
    const auto numbers = nt::make_test_numbers(nt::csss4_default_numbers());
    for (auto _ : state) {
        benchmark::DoNotOptimize(csss_test_4(BitReader(s), numbers));
    }
}
BENCHMARK(BM_Csss4FullSet)->Unit(benchmark::kMillisecond);

void BM_Borel(benchmark::State& state) {
    const BitString s = sources::mt19937_bits(3, 1u << 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(borel_metric(BitReader(s)));
    }
    state.SetBytesProcessed(state.iterations() * (1u << 17));
}
BENCHMARK(BM_Borel)->Unit(benchmark::kMillisecond);

}  // namespace
