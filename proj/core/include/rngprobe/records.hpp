#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rngprobe/csss.hpp"
#include "rngprobe/stats.hpp"

namespace rngprobe::records {

inline constexpr std::string_view kSuiteVersion = "0.1.0";

/// One sample definition inside a run manifest.
struct SampleSpec {
    std::string label;
    std::string kind;  // mt19937 | gfsr4 | file | qrng-http
    stats::Family family = stats::Family::unspecified;

    // PRNG kinds: per-string seeds are seed + string index.
    std::uint32_t seed = 0;
    std::size_t count = 0;
    std::uint64_t length_bits = 0;

    // file kind: one path per string.
    std::vector<std::filesystem::path> paths;

    // qrng-http kind.
    std::string endpoint;
    std::size_t block_size = 1024;
    std::filesystem::path cache;
};

struct RunManifest {
    std::vector<SampleSpec> samples;
    std::vector<TestId> tests;
    bool complement = true;
    std::optional<std::uint64_t> loop_to;
    std::optional<std::uint64_t> carmichael_limit;
    std::optional<std::filesystem::path> carmichael_file;
    std::filesystem::path out_dir;
    unsigned jobs = 1;
};

/// Parses and validates a JSON manifest; referenced files must exist.
RunManifest parse_manifest(const std::filesystem::path& path);

/// FNV-1a over the manifest file bytes, as a 16-hex-digit token embedded in
/// every result record.
std::string manifest_digest(const std::filesystem::path& path);

struct PerNRecord {
    std::string n;
    unsigned m = 0;
    unsigned k = 0;
    std::uint64_t violations = 0;
    std::uint64_t witnesses_checked = 0;
};

/// Flat serialization of one TestOutcome plus its provenance.
struct ResultRecord {
    std::string generator;
    stats::Family family = stats::Family::unspecified;
    std::size_t index = 0;
    bool complemented = false;
    std::string test;
    double metric = 0.0;

    std::optional<double> bias;
    std::optional<std::uint64_t> repetitions;
    std::optional<std::uint64_t> witnesses;
    std::optional<std::uint64_t> bits;
    std::optional<std::uint64_t> discarded;
    std::optional<std::uint64_t> violations;
    std::vector<PerNRecord> per_n;

    std::string suite_version;
    std::string manifest_digest;
    std::string error;
};

ResultRecord to_record(const TestOutcome& outcome, const std::string& generator,
                       stats::Family family, const std::string& digest);

/// Line-delimited JSON, one record per line after a header line carrying
/// the suite version, manifest digest, and timestamp.
void write_jsonl(const std::filesystem::path& path, std::span<const ResultRecord> records,
                 const std::string& digest);
std::vector<ResultRecord> read_jsonl(const std::filesystem::path& path);

/// CSV summary of the same records (headline numbers only; the numeric
/// content matches the JSONL fields digit for digit).
void write_csv(const std::filesystem::path& path, std::span<const ResultRecord> records);

/// 17-significant-digit serialization used for all reals in both formats.
std::string format_double(double v);

/// Groups records into stats datasets keyed by (generator, test,
/// orientation); records with errors are skipped.
std::vector<stats::Dataset> to_datasets(std::span<const ResultRecord> records);

/// Comparison matrix serialization.
void write_compare_csv(const std::filesystem::path& path,
                       std::span<const stats::ComparisonReport> reports);
void write_compare_jsonl(const std::filesystem::path& path,
                         std::span<const stats::ComparisonReport> reports);

}  // namespace rngprobe::records
