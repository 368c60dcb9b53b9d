#include <benchmark/benchmark.h>

#include <random>

#include "rngprobe/bits.hpp"
#include "rngprobe/sources.hpp"

using namespace rngprobe;

namespace {

BitString make_string(std::uint64_t bits) {
    return sources::mt19937_bits(99, bits);
}

void BM_GetBits64(benchmark::State& state) {
    const BitString s = make_string(1u << 20);
    const BitReader r(s);
    std::uint64_t pos = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.get_bits64(pos, 40));
        pos = (pos + 41) % ((1u << 20) - 64);
    }
}
BENCHMARK(BM_GetBits64);

void BM_GetBits64Looped(benchmark::State& state) {
    const LoopedView v = loop_to(make_string(64000), 1u << 24);
    const BitReader r(v);
    std::uint64_t pos = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.get_bits64(pos, 40));
        pos = (pos + 41) % ((1u << 24) - 64);
    }
}
BENCHMARK(BM_GetBits64Looped);

void BM_ExtractValue280(benchmark::State& state) {
    const BitString s = make_string(1u << 20);
    const BitReader r(s);
    std::vector<std::uint64_t> limbs(5);
    std::uint64_t pos = 0;
    for (auto _ : state) {
        r.extract_value(pos, 280, limbs);
        benchmark::DoNotOptimize(limbs.data());
        pos = (pos + 281) % ((1u << 20) - 512);
    }
}
BENCHMARK(BM_ExtractValue280);

void BM_Complement(benchmark::State& state) {
    const BitString s = make_string(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.complemented());
    }
    state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_Complement)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace
