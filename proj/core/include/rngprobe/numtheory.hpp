#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rngprobe/error.hpp"

namespace rngprobe::nt {

/// Integer type for test numbers and modular arithmetic. 128 bits covers
/// the full working range of moduli up to 1e20.
using wide = unsigned __int128;

unsigned bit_length(wide v) noexcept;
std::string to_string(wide v);
wide wide_from_string(std::string_view text);  // throws ParseError

/// (a * b) mod n without overflow for any n below 2^96.
wide mulmod(wide a, wide b, wide n);
/// a^e mod n by square-and-multiply.
wide powmod(wide a, wide e, wide n);
/// Jacobi symbol (a/n) for odd n >= 3; zero iff gcd(a, n) > 1.
int jacobi(wide a, wide n);

/// Solovay-Strassen predicate W(n, a): true iff (a/n) differs from
/// a^((n-1)/2) modulo n, comparing the Jacobi value -1 as the residue
/// n - 1. True means a witnesses the compositeness of n. Requires odd
/// n >= 3 and 1 <= a <= n - 1.
bool ss_predicate(wide n, wide a);

/// An odd composite test number with its cached witness-string parameters:
/// ell  -- bits in the binary representation of n;
/// m_cs -- witness string length ell * (3*ell - 2);
/// k_digits -- number of base-(n-1) digits consumed by the compound
///             predicate: the smallest k with (n-1)^(k+1) >= 2^m_cs;
/// p_ss -- 2^-k_digits, the per-witness violation probability bound.
struct TestNumber {
    wide n = 0;
    unsigned ell = 0;
    unsigned m_cs = 0;
    unsigned k_digits = 0;
    double p_ss = 0.0;
};

/// Computes the parameters above. When verify_composite is set and n is
/// small enough to factor by trial division (n <= 1e12), primality of n is
/// rejected with a DomainError; larger ingested numbers are accepted as-is.
TestNumber cs_params(wide n, bool verify_composite = true);

/// Unsigned integer in little-endian 64-bit limbs; the working value type
/// for witness strings wider than 128 bits.
struct BigValue {
    std::vector<std::uint64_t> limbs;

    static BigValue with_limbs(std::size_t n) { return BigValue{std::vector<std::uint64_t>(n, 0)}; }
    bool is_zero() const noexcept;
    /// Divides in place by d (0 < d < 2^96) and returns the remainder.
    wide divmod(wide d);
    /// value = value * mult + add; requires mult > 0. Grows as needed.
    void mul_add(std::uint64_t mult, std::uint64_t add);
};

/// Base-(n-1) digit expansion d_0 ... d_k of a witness value, least
/// significant digit first, zero-padded to exactly k_digits + 1 entries.
struct DigitString {
    std::vector<wide> digits;
    wide base = 0;
};

DigitString to_base_digits(BigValue s_value, const TestNumber& n);
DigitString to_base_digits(wide s_value, const TestNumber& n);

struct CsEvaluation {
    bool z = false;                  // true == all k predicates false (a violation for composite n)
    unsigned digits_evaluated = 0;   // number of W evaluations performed
};

/// Compound predicate Z(n, s) over digits d_0 .. d_{k-1}: evaluates
/// W(n, 1 + d_i) in order, short-circuiting at the first witness. The
/// leading digit d_k is not consulted.
CsEvaluation cs_predicate(const TestNumber& n, const DigitString& d);

/// All Carmichael numbers <= limit, ascending, by trial-division
/// factorization and Korselt's criterion. Requires limit >= 561.
std::vector<wide> carmichael_up_to(std::uint64_t limit);

/// Korselt check for a single number via trial division.
bool is_carmichael(std::uint64_t n);

/// Loads an ascending list of Carmichael numbers, one ASCII decimal per
/// line. Each entry must be odd and > 560. With korselt_validate set,
/// entries <= 1e12 are additionally checked against Korselt's criterion.
std::vector<wide> load_carmichael(const std::filesystem::path& path,
                                  bool korselt_validate = false);

/// The default fourth-test set: all odd composites below 100 plus 561.
std::span<const wide> csss4_default_numbers();

std::vector<TestNumber> make_test_numbers(std::span<const wide> numbers,
                                          bool verify_composite = true);

}  // namespace rngprobe::nt
