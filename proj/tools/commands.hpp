#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rngprobe/records.hpp"

namespace rngprobe::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kInvalidInput = 2;

struct GenerateArgs {
    std::string kind;
    std::string label;
    std::uint32_t seed = 1;
    std::size_t count = 1;
    std::uint64_t length_bits = 1u << 20;
    std::filesystem::path out_dir = "strings";
    // qrng-http
    std::string endpoint;
    std::size_t block_size = 1024;
    std::filesystem::path cache;
};

struct TestArgs {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;       // override when nonempty
    unsigned jobs = 0;                   // override when nonzero
    std::string carmichael;              // override: decimal limit or file path
    std::uint64_t loop_to = 0;           // override when nonzero
    bool complement = false;             // --complement forces it on
};

struct CompareArgs {
    std::vector<std::filesystem::path> results;
    std::filesystem::path out_dir = ".";
    std::string test;  // restrict to one test id when nonempty
    double sig_threshold = 0.005;
    double normal_threshold = 0.05;
    bool include_self = false;
};

struct Table1Args {
    std::filesystem::path out = "table1.csv";
    std::vector<std::filesystem::path> results;  // optional, adds p_obs
};

struct FetchArgs {
    std::string endpoint;
    std::uint64_t bits = 0;
    std::size_t block_size = 1024;
    std::filesystem::path cache_file;
    unsigned max_attempts = 4;
    std::string api_key_env = "QRNG_API_KEY";
};

int cmd_generate(const GenerateArgs& args);
int cmd_test(const TestArgs& args);
int cmd_compare(const CompareArgs& args);
int cmd_table1(const Table1Args& args);
int cmd_fetch(const FetchArgs& args);

// "12345" -> generated list up to the limit; anything else -> file load.
std::vector<nt::wide> resolve_carmichael(const std::string& arg);

// Deterministic per-sample string materialization shared by generate/test.
std::vector<BitString> realize_sample(const records::SampleSpec& spec);

std::string sample_file_name(const std::string& label, std::size_t index);

}  // namespace rngprobe::cli
