#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rngprobe/bits.hpp"
#include "rngprobe/borel.hpp"
#include "rngprobe/numtheory.hpp"

namespace rngprobe {

/// Thrown when a bit source runs dry before every test number is handled.
/// Carries how far the run got.
class SourceExhausted : public Error {
public:
    SourceExhausted(std::size_t numbers_verified, std::uint64_t bits_consumed)
        : Error("bit source exhausted after " + std::to_string(numbers_verified) +
                " test numbers and " + std::to_string(bits_consumed) + " bits"),
          numbers_verified_(numbers_verified),
          bits_consumed_(bits_consumed) {}

    std::size_t numbers_verified() const noexcept { return numbers_verified_; }
    std::uint64_t bits_consumed() const noexcept { return bits_consumed_; }

private:
    std::size_t numbers_verified_;
    std::uint64_t bits_consumed_;
};

/// Combined result of the first two tests, which share one pass:
/// witnesses_used is the first test's metric, bits_used the second's.
struct Csss12Result {
    std::uint64_t witnesses_used = 0;  // W evaluations performed
    std::uint64_t bits_used = 0;       // bits consumed, discarded candidates included
    std::uint64_t discarded = 0;       // candidates == 0 or > n-1
};

struct Csss3Result {
    std::uint64_t bits_used = 0;  // charged at whole-digit granularity
    std::uint64_t violations = 0;
};

struct Csss4PerN {
    nt::wide n = 0;
    unsigned m = 0;
    unsigned k = 0;
    std::uint64_t violations = 0;
    std::uint64_t witnesses_checked = 0;

    double p_obs() const noexcept {
        return witnesses_checked == 0
                   ? 0.0
                   : static_cast<double>(violations) / static_cast<double>(witnesses_checked);
    }
};

struct Csss4Result {
    std::uint64_t total_violations = 0;
    std::vector<Csss4PerN> per_n;
};

/// First and second tests: for each number, candidates of ell(n) bits are
/// read until one witnesses compositeness; out-of-range candidates are
/// discarded but still cost bits. The cursor is shared across the whole
/// list, bits are never rewound.
Csss12Result csss_test_1_2(const BitReader& x, std::span<const nt::wide> carmichael);

/// Third test: an m-bit witness string per number, converted to base n-1;
/// digits feed the Solovay-Strassen predicate until one witnesses. Charged
/// bits: ceil(m*(i+1)/k) when digit i is the first witness, all m on a
/// violation.
Csss3Result csss_test_3(const BitReader& x, std::span<const nt::wide> carmichael);

/// Fourth test: every offset class 0..m-1 contributes disjoint m-bit
/// blocks, so each position in 0..|x|-m starts exactly one witness string.
/// Counts compound-predicate violations per number.
Csss4Result csss_test_4(const BitReader& x, std::span<const nt::TestNumber> numbers);

enum class TestId { borel, csss1, csss2, csss3, csss4 };

std::string_view test_id_name(TestId t);
std::optional<TestId> test_id_from_name(std::string_view name);

/// One string's result for one test.
struct TestOutcome {
    std::size_t string_index = 0;
    bool complemented = false;
    TestId test = TestId::borel;
    double metric = 0.0;
    std::optional<std::uint64_t> repetitions;  // set when the CSSS input was looped

    std::optional<BorelResult> borel_result;
    std::optional<double> bias_value;
    std::optional<Csss12Result> csss12;
    std::optional<Csss3Result> csss3;
    std::optional<Csss4Result> csss4;

    std::string error;  // nonempty == this outcome failed

    bool ok() const noexcept { return error.empty(); }
};

struct RunOptions {
    bool complement = false;                // also evaluate complemented strings
    std::optional<std::uint64_t> loop_to;   // CSSS tests read a looped view of this length
    std::vector<nt::wide> carmichael;       // tests 1-3
    std::vector<nt::TestNumber> numbers;    // test 4; empty == default 26-number set
    unsigned jobs = 1;
};

/// Runs the selected tests over every string (and its complement when
/// requested). Outcomes are ordered by (string, orientation, test) and are
/// deterministic for any job count. Per-string failures are recorded in
/// the outcome, the sample continues.
std::vector<TestOutcome> run_sample(std::span<const BitString> strings,
                                    std::span<const TestId> tests, const RunOptions& options);

}  // namespace rngprobe
