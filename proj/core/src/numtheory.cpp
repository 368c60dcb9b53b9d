#include "rngprobe/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

namespace rngprobe::nt {

namespace {

// Largest modulus the fast product path can take: a, b < 2^64 keeps a*b
// inside 128 bits.
constexpr wide kDirectMulLimit = static_cast<wide>(~std::uint64_t{0}) + 1;

}  // namespace

unsigned bit_length(wide v) noexcept {
    unsigned n = 0;
    while (v != 0) {
        v >>= 1;
        ++n;
    }
    return n;
}

std::string to_string(wide v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

wide wide_from_string(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal");
    wide v = 0;
    constexpr wide kMax = ~static_cast<wide>(0);
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("invalid digit in integer literal");
        const unsigned d = static_cast<unsigned>(c - '0');
        if (v > (kMax - d) / 10) throw ParseError("integer literal exceeds 128 bits");
        v = v * 10 + d;
    }
    return v;
}

wide mulmod(wide a, wide b, wide n) {
    if (n < 2) throw DomainError("modulus must be at least 2");
    a %= n;
    b %= n;
    if (n <= kDirectMulLimit) return a * b % n;
    if (bit_length(n) > 96) throw DomainError("modulus wider than 96 bits");
    // Shift-and-add with both operands below n < 2^96: no intermediate can
    // reach 2^128.
    wide result = 0;
    while (b != 0) {
        if (b & 1) {
            result += a;
            if (result >= n) result -= n;
        }
        a <<= 1;
        if (a >= n) a -= n;
        b >>= 1;
    }
    return result;
}

wide powmod(wide a, wide e, wide n) {
    if (n < 2) throw DomainError("modulus must be at least 2");
    wide base = a % n;
    wide result = n == 1 ? 0 : 1;
    while (e != 0) {
        if (e & 1) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        e >>= 1;
    }
    return result;
}

int jacobi(wide a, wide n) {
    if (n < 3 || (n & 1) == 0) throw DomainError("Jacobi symbol requires odd n >= 3");
    a %= n;
    int sign = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const unsigned r = static_cast<unsigned>(n & 7);
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

bool ss_predicate(wide n, wide a) {
    if (n < 3 || (n & 1) == 0) throw DomainError("Solovay-Strassen predicate requires odd n >= 3");
    if (a == 0 || a > n - 1) throw DomainError("witness candidate out of [1, n-1]");
    const int j = jacobi(a, n);
    const wide jac_residue = j == -1 ? n - 1 : static_cast<wide>(j);
    return jac_residue != powmod(a, (n - 1) / 2, n);
}

namespace {

// Smallest prime factor by trial division; returns 0 when n is prime.
// Only sensible for n that trial division can handle (<= ~1e12).
std::uint64_t smallest_factor(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return d;
    }
    return 0;
}

// Number of bits in base^exp, via a tiny 32-bit limb bignum. Exact, so the
// k_digits boundary cases cannot be lost to floating-point rounding.
std::uint64_t pow_bit_length(wide base, unsigned exp) {
    std::vector<std::uint32_t> v{1};
    for (unsigned i = 0; i < exp; ++i) {
        std::vector<std::uint32_t> next(v.size() + 4, 0);
        for (std::size_t j = 0; j < v.size(); ++j) {
            wide prod = static_cast<wide>(v[j]) * base;  // < 2^128 for base < 2^96
            std::size_t pos = j;
            while (prod != 0) {
                if (pos == next.size()) next.push_back(0);
                const wide cur = static_cast<wide>(next[pos]) + (prod & 0xffffffffu);
                next[pos] = static_cast<std::uint32_t>(cur);
                prod = (prod >> 32) + (cur >> 32);
                ++pos;
            }
        }
        while (next.size() > 1 && next.back() == 0) next.pop_back();
        v = std::move(next);
    }
    std::uint64_t bits = static_cast<std::uint64_t>(v.size() - 1) * 32;
    std::uint32_t top = v.back();
    while (top != 0) {
        top >>= 1;
        ++bits;
    }
    return bits;
}

}  // namespace

TestNumber cs_params(wide n, bool verify_composite) {
    if (n < 9 || (n & 1) == 0) throw DomainError("test numbers must be odd and >= 9");
    if (verify_composite && n <= static_cast<wide>(1000000000000ull)) {
        if (smallest_factor(static_cast<std::uint64_t>(n)) == 0) {
            throw DomainError("test number " + to_string(n) + " is prime");
        }
    }
    TestNumber t;
    t.n = n;
    t.ell = bit_length(n);
    t.m_cs = t.ell * (3 * t.ell - 2);
    // smallest k with (n-1)^(k+1) >= 2^m, i.e. bitlen((n-1)^(k+1)) >= m+1
    const double approx = static_cast<double>(t.m_cs) /
                          std::log2(static_cast<double>(n - 1));
    unsigned k = approx > 2.0 ? static_cast<unsigned>(approx) - 2 : 0;
    while (pow_bit_length(n - 1, k + 1) < t.m_cs + 1ull) ++k;
    t.k_digits = k;
    t.p_ss = std::ldexp(1.0, -static_cast<int>(k));
    return t;
}

bool BigValue::is_zero() const noexcept {
    for (std::uint64_t l : limbs) {
        if (l != 0) return false;
    }
    return true;
}

wide BigValue::divmod(wide d) {
    if (d == 0) throw DomainError("division by zero");
    if (d >> 96 != 0) throw DomainError("divisor wider than 96 bits");
    if (d <= 0xffffffffu) {
        // Fast path: 32-bit chunks with hardware 64-bit division.
        const std::uint64_t dv = static_cast<std::uint64_t>(d);
        std::uint64_t rem = 0;
        for (std::size_t i = limbs.size(); i-- > 0;) {
            const std::uint64_t hi = limbs[i] >> 32;
            const std::uint64_t lo = limbs[i] & 0xffffffffu;
            std::uint64_t cur = (rem << 32) | hi;
            const std::uint64_t qhi = cur / dv;
            rem = cur % dv;
            cur = (rem << 32) | lo;
            const std::uint64_t qlo = cur / dv;
            rem = cur % dv;
            limbs[i] = (qhi << 32) | qlo;
        }
        return rem;
    }
    // General path: 32-bit chunks with 128-bit intermediates; the running
    // remainder stays below d < 2^96, so (rem << 32) | chunk fits 128 bits.
    wide rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
        const std::uint64_t hi = limbs[i] >> 32;
        const std::uint64_t lo = limbs[i] & 0xffffffffu;
        wide cur = (rem << 32) | hi;
        const std::uint64_t qhi = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
        cur = (rem << 32) | lo;
        const std::uint64_t qlo = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
        limbs[i] = (qhi << 32) | qlo;
    }
    return rem;
}

void BigValue::mul_add(std::uint64_t mult, std::uint64_t add) {
    if (mult == 0) throw DomainError("mul_add multiplier must be positive");
    wide carry = add;
    for (std::size_t i = 0; i < limbs.size(); ++i) {
        const wide cur = static_cast<wide>(limbs[i]) * mult + carry;
        limbs[i] = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
    }
    while (carry != 0) {
        limbs.push_back(static_cast<std::uint64_t>(carry));
        carry >>= 64;
    }
}

DigitString to_base_digits(BigValue s_value, const TestNumber& n) {
    DigitString d;
    d.base = n.n - 1;
    d.digits.reserve(n.k_digits + 1);
    for (unsigned i = 0; i <= n.k_digits; ++i) {
        d.digits.push_back(s_value.divmod(d.base));
    }
    if (!s_value.is_zero()) {
        throw DomainError("witness value does not fit in k+1 digits");
    }
    return d;
}

DigitString to_base_digits(wide s_value, const TestNumber& n) {
    BigValue v = BigValue::with_limbs(2);
    v.limbs[0] = static_cast<std::uint64_t>(s_value);
    v.limbs[1] = static_cast<std::uint64_t>(s_value >> 64);
    return to_base_digits(std::move(v), n);
}

CsEvaluation cs_predicate(const TestNumber& n, const DigitString& d) {
    if (d.digits.size() < n.k_digits) {
        throw DomainError("digit string shorter than k digits");
    }
    CsEvaluation e;
    for (unsigned i = 0; i < n.k_digits; ++i) {
        ++e.digits_evaluated;
        if (ss_predicate(n.n, 1 + d.digits[i])) {
            e.z = false;
            return e;
        }
    }
    e.z = true;
    return e;
}

namespace {

// Korselt test with an already-started factorization state: n odd, possibly
// large. Returns true iff n is squarefree, composite, and p-1 | n-1 for
// every prime factor p.
bool korselt_by_trial_division(std::uint64_t n) {
    if (n < 9 || n % 2 == 0) return false;
    std::uint64_t m = n;
    unsigned factors = 0;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return false;  // not squarefree
        if ((n - 1) % (p - 1) != 0) return false;
        ++factors;
    }
    if (m > 1) {
        if (m == n) return false;  // no factor found: prime
        if ((n - 1) % (m - 1) != 0) return false;
        ++factors;
    }
    return factors >= 2;
}

}  // namespace

bool is_carmichael(std::uint64_t n) {
    return korselt_by_trial_division(n);
}

std::vector<wide> carmichael_up_to(std::uint64_t limit) {
    if (limit < 561) throw DomainError("Carmichael scan limit must be at least 561");
    std::vector<wide> out;
    for (std::uint64_t n = 561; n <= limit; n += 2) {
        // Every Carmichael number satisfies Fermat's little theorem for all
        // coprime bases; odd n is always coprime to 2, so this filter loses
        // nothing and skips the factorization for almost every candidate.
        if (powmod(2, n - 1, n) != 1) continue;
        if (korselt_by_trial_division(n)) out.push_back(n);
    }
    return out;
}

std::vector<wide> load_carmichael(const std::filesystem::path& path, bool korselt_validate) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<wide> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        wide v;
        try {
            v = wide_from_string(line);
        } catch (const ParseError&) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": not an integer");
        }
        if ((v & 1) == 0) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": even entry " +
                             to_string(v));
        }
        if (v <= 560) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": entry below the smallest Carmichael number");
        }
        if (!out.empty() && v <= out.back()) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": list not ascending");
        }
        if (korselt_validate && v <= static_cast<wide>(1000000000000ull) &&
            !is_carmichael(static_cast<std::uint64_t>(v))) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + to_string(v) +
                             " fails Korselt's criterion");
        }
        out.push_back(v);
    }
    if (out.empty()) throw ParseError(path.string() + ": no entries");
    return out;
}

std::span<const wide> csss4_default_numbers() {
    static const std::vector<wide> kNumbers = {
        9,  15, 21, 25, 27, 33, 35, 39, 45, 49, 51, 55, 57,
        63, 65, 69, 75, 77, 81, 85, 87, 91, 93, 95, 99, 561,
    };
    return kNumbers;
}

std::vector<TestNumber> make_test_numbers(std::span<const wide> numbers, bool verify_composite) {
    std::vector<TestNumber> out;
    out.reserve(numbers.size());
    for (wide n : numbers) out.push_back(cs_params(n, verify_composite));
    return out;
}

}  // namespace rngprobe::nt
