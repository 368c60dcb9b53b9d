#pragma once

#include <cstdint>
#include <map>

#include "rngprobe/bits.hpp"

namespace rngprobe {

/// Borel normality evaluation over non-overlapping substring frequencies.
/// For each block length m in 1..m_max the deviation is
///   max_j | N_j^m / (|x|/m) - 2^-m |
/// and the metric is the largest deviation scaled by sqrt(|x| / log2 |x|).
/// The string passes the test iff metric <= 1.
struct BorelResult {
    double metric = 0.0;
    std::map<unsigned, double> per_m_deviation;
    unsigned m_max = 0;
    std::uint64_t string_length = 0;

    bool normal() const noexcept { return metric <= 1.0; }
};

/// Largest tested block length: floor(log2 log2 length).
unsigned borel_m_max(std::uint64_t length);

/// Requires at least 16 bits of input.
BorelResult borel_metric(const BitReader& x);

/// | relative frequency of zeros - 1/2 |.
double bias(const BitReader& x);

}  // namespace rngprobe
