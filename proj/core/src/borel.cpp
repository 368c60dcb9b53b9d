#include "rngprobe/borel.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace rngprobe {

unsigned borel_m_max(std::uint64_t length) {
    if (length < 4) throw DomainError("string too short for a Borel block length");
    // floor(log2 log2 length) with pure integer arithmetic: the inner floor
    // cannot change the outer one because the breakpoints are powers of two.
    unsigned l1 = 63;
    while ((length >> l1) == 0) --l1;
    unsigned l2 = 31;
    while ((l1 >> l2) == 0) --l2;
    return l2;
}

BorelResult borel_metric(const BitReader& x) {
    const std::uint64_t len = x.size();
    if (len < 16) throw DomainError("Borel test needs at least 16 bits");
    BorelResult r;
    r.string_length = len;
    r.m_max = borel_m_max(len);
    const double scale = std::sqrt(static_cast<double>(len) / std::log2(static_cast<double>(len)));
    for (unsigned m = 1; m <= r.m_max; ++m) {
        std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
        const std::uint64_t blocks = len / m;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            ++counts[x.get_bits64(b * m, m)];
        }
        // |N_j/(len/m) - 2^-m| == |N_j*m*2^m - len| / (len*2^m): one exact
        // integer numerator per pattern, one division at the end. For m=1
        // this reduces to the same expression bias() uses, keeping the two
        // bit-for-bit identical.
        using u128 = unsigned __int128;
        u128 max_diff = 0;
        for (std::uint64_t c : counts) {
            const u128 scaled = static_cast<u128>(c) * m << m;
            const u128 diff = scaled >= len ? scaled - len : static_cast<u128>(len) - scaled;
            max_diff = std::max(max_diff, diff);
        }
        const double dev = static_cast<double>(max_diff) /
                           (static_cast<double>(len) * std::ldexp(1.0, static_cast<int>(m)));
        r.per_m_deviation[m] = dev;
        r.metric = std::max(r.metric, dev * scale);
    }
    return r;
}

double bias(const BitReader& x) {
    const std::uint64_t len = x.size();
    if (len == 0) throw DomainError("bias of an empty string");
    std::uint64_t ones = 0;
    std::uint64_t pos = 0;
    while (pos < len) {
        const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, len - pos));
        ones += static_cast<std::uint64_t>(std::popcount(x.get_bits64(pos, take)));
        pos += take;
    }
    // |N_0/len - 1/2| computed as an integer quotient |2*N_0 - len|/(2*len),
    // so complementing the string (N_0 <-> N_1) cannot move the result by
    // even one ulp.
    const std::uint64_t zeros = len - ones;
    const std::uint64_t diff = zeros * 2 >= len ? zeros * 2 - len : len - zeros * 2;
    return static_cast<double>(diff) / (2.0 * static_cast<double>(len));
}

}  // namespace rngprobe
