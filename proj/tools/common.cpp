#include <cctype>
#include <cstdio>

#include "commands.hpp"
#include "rngprobe/sources.hpp"

namespace rngprobe::cli {

std::vector<nt::wide> resolve_carmichael(const std::string& arg) {
    if (arg.empty()) {
        // Desk-scale default: every Carmichael number below one million.
        return nt::carmichael_up_to(1000000);
    }
    bool digits_only = true;
    for (char c : arg) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            digits_only = false;
            break;
        }
    }
    if (digits_only) {
        return nt::carmichael_up_to(std::stoull(arg));
    }
    return nt::load_carmichael(std::filesystem::path(arg), /*korselt_validate=*/false);
}

std::string sample_file_name(const std::string& label, std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "-%03zu.bin", index);
    return label + buf;
}

std::vector<BitString> realize_sample(const records::SampleSpec& spec) {
    std::vector<BitString> strings;
    strings.reserve(spec.count);
    if (spec.kind == "mt19937") {
        for (std::size_t i = 0; i < spec.count; ++i) {
            strings.push_back(
                sources::mt19937_bits(spec.seed + static_cast<std::uint32_t>(i), spec.length_bits));
        }
    } else if (spec.kind == "gfsr4") {
        for (std::size_t i = 0; i < spec.count; ++i) {
            strings.push_back(
                sources::gfsr4_bits(spec.seed + static_cast<std::uint32_t>(i), spec.length_bits));
        }
    } else if (spec.kind == "file") {
        for (const auto& p : spec.paths) strings.push_back(load_bits(p));
    } else if (spec.kind == "qrng-http") {
        const std::uint64_t total = spec.length_bits * spec.count;
        BitString pool;
        if (!spec.cache.empty() && std::filesystem::exists(spec.cache)) {
            pool = load_bits(spec.cache);
            if (pool.size() < total) {
                throw DomainError("cache file " + spec.cache.string() + " holds " +
                                  std::to_string(pool.size()) + " bits, need " +
                                  std::to_string(total));
            }
        } else {
            sources::FetchSession session;
            session.endpoint = spec.endpoint;
            session.block_size = spec.block_size;
            session.cache_file = spec.cache;
            if (const char* key = std::getenv("QRNG_API_KEY")) session.api_key = key;
            pool = sources::fetch_qrng(session, total);
        }
        // Split the pool into count strings of length_bits. Byte-aligned
        // lengths slice the cache exactly as consecutive file chunks.
        for (std::size_t i = 0; i < spec.count; ++i) {
            strings.push_back(pool.substring(i * spec.length_bits, spec.length_bits));
        }
    } else {
        throw DomainError("unknown sample kind '" + spec.kind + "'");
    }
    return strings;
}

}  // namespace rngprobe::cli
