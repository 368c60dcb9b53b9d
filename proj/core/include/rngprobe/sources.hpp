#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rngprobe/bits.hpp"

namespace rngprobe::sources {

/// Standard Mersenne Twister output, each 32-bit word serialized MSB-first,
/// truncated to `count_bits`. Pure function of (seed, count_bits).
BitString mt19937_bits(std::uint32_t seed, std::uint64_t count_bits);

/// Four-tap XOR generalized feedback shift register with lags
/// (471, 1586, 6988, 9689) over a 2^14-word table. Seeding follows the
/// usual LCG bit-column scramble with the diagonal orthogonalization; a
/// zero seed maps to the default 4357. Words serialize MSB-first.
BitString gfsr4_bits(std::uint32_t seed, std::uint64_t count_bits);

/// The raw gfsr4 word stream, exposed for vector tests.
class Gfsr4 {
public:
    explicit Gfsr4(std::uint32_t seed);
    std::uint32_t next();

private:
    std::vector<std::uint32_t> table_;
    std::uint32_t pos_;
};

/// Remote service reported a failure or returned an unusable payload.
class ServiceError : public Error {
public:
    using Error::Error;
};

/// One acquisition session against a JSON byte-array service
/// (GET <endpoint>?length=N&type=uint8 returning
/// {"success": bool, "data": [0..255, ...]}).
struct FetchSession {
    std::string endpoint;                          // http://host[:port]/path
    std::size_t block_size = 1024;                 // values per request
    unsigned max_attempts = 4;                     // per request, transport-level
    std::chrono::milliseconds initial_backoff{250};
    std::filesystem::path cache_file;              // raw bytes land here
    std::string api_key;                           // sent as x-api-key when nonempty
    std::uint64_t received_bytes = 0;
};

/// Fetches ceil(count_bits/8) bytes in block_size chunks. Every successful
/// request is appended to the cache file before the call returns, so a
/// session can always be replayed offline; a failed request appends
/// nothing. Transport errors retry with exponential backoff, a
/// server-reported failure aborts immediately with ServiceError.
BitString fetch_qrng(FetchSession& session, std::uint64_t count_bits);

}  // namespace rngprobe::sources
