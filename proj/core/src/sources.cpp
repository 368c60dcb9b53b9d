#include "rngprobe/sources.hpp"

#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace rngprobe::sources {

namespace {

BitString words_to_bits(const std::vector<std::uint32_t>& words, std::uint64_t count_bits) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(words.size() * 4);
    for (std::uint32_t w : words) {
        bytes.push_back(static_cast<std::uint8_t>(w >> 24));
        bytes.push_back(static_cast<std::uint8_t>(w >> 16));
        bytes.push_back(static_cast<std::uint8_t>(w >> 8));
        bytes.push_back(static_cast<std::uint8_t>(w));
    }
    BitString full = BitString::from_bytes(bytes);
    return full.size() == count_bits ? full : full.truncated(count_bits);
}

}  // namespace

BitString mt19937_bits(std::uint32_t seed, std::uint64_t count_bits) {
    if (count_bits == 0) throw DomainError("bit count must be positive");
    std::mt19937 gen(seed);
    const std::uint64_t nwords = (count_bits + 31) / 32;
    std::vector<std::uint32_t> words(nwords);
    for (auto& w : words) w = gen();
    return words_to_bits(words, count_bits);
}

Gfsr4::Gfsr4(std::uint32_t seed) : table_(16384), pos_(0) {
    constexpr std::uint32_t kTableMask = 16383;
    if (seed == 0) seed = 4357;
    // Fill each table word column-wise from the top bit of an LCG stream to
    // avoid the low-order-bit correlations of the raw congruence.
    for (std::uint32_t i = 0; i <= kTableMask; ++i) {
        std::uint32_t t = 0;
        std::uint32_t bit = 0x80000000u;
        for (int j = 0; j < 32; ++j) {
            seed = 69069u * seed;
            if (seed & 0x80000000u) t |= bit;
            bit >>= 1;
        }
        table_[i] = t;
    }
    // Orthogonalization: force a set diagonal with zeros to its left so the
    // seed matrix is nonsingular.
    std::uint32_t msb = 0x80000000u;
    std::uint32_t mask = 0xffffffffu;
    std::uint32_t i = 0;
    for (; i < 32; ++i) {
        const std::uint32_t k = 7 + i * 3;
        table_[k] &= mask;
        table_[k] |= msb;
        mask >>= 1;
        msb >>= 1;
    }
    pos_ = i;
}

std::uint32_t Gfsr4::next() {
    constexpr std::uint32_t kTableMask = 16383;
    constexpr std::uint32_t kLagA = 471;
    constexpr std::uint32_t kLagB = 1586;
    constexpr std::uint32_t kLagC = 6988;
    constexpr std::uint32_t kLagD = 9689;
    pos_ = (pos_ + 1) & kTableMask;
    table_[pos_] = table_[(pos_ + (kTableMask + 1 - kLagA)) & kTableMask] ^
                   table_[(pos_ + (kTableMask + 1 - kLagB)) & kTableMask] ^
                   table_[(pos_ + (kTableMask + 1 - kLagC)) & kTableMask] ^
                   table_[(pos_ + (kTableMask + 1 - kLagD)) & kTableMask];
    return table_[pos_];
}

BitString gfsr4_bits(std::uint32_t seed, std::uint64_t count_bits) {
    if (count_bits == 0) throw DomainError("bit count must be positive");
    Gfsr4 gen(seed);
    const std::uint64_t nwords = (count_bits + 31) / 32;
    std::vector<std::uint32_t> words(nwords);
    for (auto& w : words) w = gen.next();
    return words_to_bits(words, count_bits);
}

namespace {

struct ParsedUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // /path
};

ParsedUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw DomainError("endpoint must include a scheme");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<std::uint8_t> parse_payload(const std::string& body, std::size_t expected) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw ServiceError(std::string("malformed JSON payload: ") + e.what());
    }
    if (!doc.is_object()) throw ServiceError("payload is not a JSON object");
    if (!doc.contains("success") || !doc["success"].is_boolean() || !doc["success"].get<bool>()) {
        throw ServiceError("service reported failure");
    }
    if (!doc.contains("data") || !doc["data"].is_array()) {
        throw ServiceError("payload has no data array");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(doc["data"].size());
    for (const auto& v : doc["data"]) {
        if (!v.is_number_integer()) throw ServiceError("data entry is not an integer");
        const long long x = v.get<long long>();
        if (x < 0 || x > 255) throw ServiceError("data entry out of byte range");
        bytes.push_back(static_cast<std::uint8_t>(x));
    }
    if (bytes.size() != expected) throw ServiceError("service returned a short block");
    return bytes;
}

}  // namespace

BitString fetch_qrng(FetchSession& session, std::uint64_t count_bits) {
    if (count_bits == 0) throw DomainError("bit count must be positive");
    if (session.block_size == 0) throw DomainError("block size must be positive");
    if (session.cache_file.empty()) throw DomainError("fetch session needs a cache file");
    const std::uint64_t total_bytes = (count_bits + 7) / 8;

    const ParsedUrl url = split_url(session.endpoint);
    httplib::Client client(url.base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);

    std::vector<std::uint8_t> all;
    all.reserve(total_bytes);
    std::uint64_t fetched = 0;
    while (fetched < total_bytes) {
        const std::size_t want = static_cast<std::size_t>(
            std::min<std::uint64_t>(session.block_size, total_bytes - fetched));
        const std::string path = url.path + (url.path.find('?') == std::string::npos ? "?" : "&") +
                                 "length=" + std::to_string(want) + "&type=uint8";
        httplib::Headers headers;
        if (!session.api_key.empty()) headers.emplace("x-api-key", session.api_key);

        std::string body;
        bool got = false;
        std::string last_error;
        auto backoff = session.initial_backoff;
        for (unsigned attempt = 0; attempt < session.max_attempts; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(backoff);
                backoff *= 2;
            }
            auto res = client.Get(path, headers);
            if (!res) {
                last_error = "transport error (" + httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            body = res->body;
            got = true;
            break;
        }
        if (!got) {
            throw ServiceError("request failed after " + std::to_string(session.max_attempts) +
                               " attempts: " + last_error);
        }
        const std::vector<std::uint8_t> block = parse_payload(body, want);
        // Persist before accounting: replays must never miss returned data.
        std::ofstream cache(session.cache_file, std::ios::binary | std::ios::app);
        if (!cache) throw IoError("cannot open cache file " + session.cache_file.string());
        cache.write(reinterpret_cast<const char*>(block.data()),
                    static_cast<std::streamsize>(block.size()));
        cache.flush();
        if (!cache) throw IoError("cache write failure on " + session.cache_file.string());
        all.insert(all.end(), block.begin(), block.end());
        fetched += block.size();
        session.received_bytes += block.size();
    }

    BitString s = BitString::from_bytes(all);
    return s.size() == count_bits ? s : s.truncated(count_bits);
}

}  // namespace rngprobe::sources
