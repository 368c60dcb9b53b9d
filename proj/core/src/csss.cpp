#include "rngprobe/csss.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace rngprobe {

namespace {

using nt::wide;

std::uint64_t charged_bits(unsigned m, unsigned k, unsigned first_witness_index) {
    // Whole-digit granularity: digit i+1 of k costs ceil(m*(i+1)/k) bits.
    const std::uint64_t used = static_cast<std::uint64_t>(m) * (first_witness_index + 1);
    return (used + k - 1) / k;
}

// Per-number engine for the fourth test. Witness candidates are 1 + digit,
// so for small n every predicate value fits a lookup table and the hot loop
// is digit extraction only.
Csss4PerN csss4_one_number(const BitReader& x, const nt::TestNumber& tn) {
    Csss4PerN pn;
    pn.n = tn.n;
    pn.m = tn.m_cs;
    pn.k = tn.k_digits;
    const std::uint64_t len = x.size();
    const unsigned m = tn.m_cs;
    const unsigned k = tn.k_digits;
    if (len < m) return pn;

    std::vector<std::uint8_t> table;
    const bool cached = tn.n <= (wide{1} << 20);
    if (cached) {
        table.resize(static_cast<std::size_t>(tn.n), 0);
        for (std::uint64_t a = 1; a < static_cast<std::uint64_t>(tn.n); ++a) {
            table[a] = nt::ss_predicate(tn.n, a) ? 1 : 0;
        }
    }
    const auto witness = [&](wide a) {
        return cached ? table[static_cast<std::size_t>(a)] != 0 : nt::ss_predicate(tn.n, a);
    };

    const wide base = tn.n - 1;
    const std::uint64_t last = len - m;
    std::uint64_t violations = 0;

    if ((base & (base - 1)) == 0) {
        // Power-of-two base: digit i is a direct bit slice of the window.
        const unsigned s = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(base)));
        for (std::uint64_t p = 0; p <= last; ++p) {
            bool viol = true;
            for (unsigned i = 0; i < k; ++i) {
                const std::uint64_t d = x.get_bits64(p + m - s * (i + 1), s);
                if (witness(1 + d)) {
                    viol = false;
                    break;
                }
            }
            violations += viol ? 1 : 0;
        }
    } else if (m <= 64) {
        const std::uint64_t b64 = static_cast<std::uint64_t>(base);
        for (std::uint64_t p = 0; p <= last; ++p) {
            std::uint64_t v = x.get_bits64(p, m);
            bool viol = true;
            for (unsigned i = 0; i < k; ++i) {
                const std::uint64_t d = v % b64;
                v /= b64;
                if (witness(1 + d)) {
                    viol = false;
                    break;
                }
            }
            violations += viol ? 1 : 0;
        }
    } else if (m <= 128) {
        for (std::uint64_t p = 0; p <= last; ++p) {
            u128 v = static_cast<u128>(x.get_bits64(p, m - 64)) << 64 |
                     x.get_bits64(p + (m - 64), 64);
            bool viol = true;
            for (unsigned i = 0; i < k; ++i) {
                const wide d = v % base;
                v /= base;
                if (witness(1 + d)) {
                    viol = false;
                    break;
                }
            }
            violations += viol ? 1 : 0;
        }
    } else {
        nt::BigValue scratch = nt::BigValue::with_limbs((m + 63) / 64);
        for (std::uint64_t p = 0; p <= last; ++p) {
            x.extract_value(p, m, scratch.limbs);
            bool viol = true;
            for (unsigned i = 0; i < k; ++i) {
                const wide d = scratch.divmod(base);
                if (witness(1 + d)) {
                    viol = false;
                    break;
                }
            }
            violations += viol ? 1 : 0;
        }
    }
    pn.violations = violations;
    pn.witnesses_checked = last + 1;
    return pn;
}

}  // namespace

namespace {

void require_ascending(std::span<const wide> numbers) {
    if (numbers.empty()) throw DomainError("empty test-number list");
    for (std::size_t i = 1; i < numbers.size(); ++i) {
        if (numbers[i] <= numbers[i - 1]) {
            throw DomainError("test-number list must be ascending");
        }
    }
}

}  // namespace

Csss12Result csss_test_1_2(const BitReader& x, std::span<const wide> carmichael) {
    require_ascending(carmichael);
    Csss12Result r;
    BitCursor cur{x};
    std::size_t verified = 0;
    for (std::size_t idx = 0; idx < carmichael.size(); ++idx) {
        const wide n = carmichael[idx];
        const unsigned ell = nt::bit_length(n);
        for (;;) {
            u128 a;
            try {
                a = cur.read(ell);
            } catch (const ExhaustedError&) {
                throw SourceExhausted(verified, cur.consumed());
            }
            r.bits_used += ell;
            if (a == 0 || a > n - 1) {
                ++r.discarded;
                continue;
            }
            ++r.witnesses_used;
            if (nt::ss_predicate(n, a)) break;
        }
        ++verified;
    }
    return r;
}

Csss3Result csss_test_3(const BitReader& x, std::span<const wide> carmichael) {
    require_ascending(carmichael);
    Csss3Result r;
    BitCursor cur{x};
    std::size_t verified = 0;
    nt::BigValue scratch;
    for (std::size_t idx = 0; idx < carmichael.size(); ++idx) {
        const wide n = carmichael[idx];
        const nt::TestNumber tn = nt::cs_params(n, /*verify_composite=*/false);
        if (cur.remaining() < tn.m_cs) throw SourceExhausted(verified, cur.consumed());
        scratch.limbs.assign((tn.m_cs + 63) / 64, 0);
        x.extract_value(cur.position(), tn.m_cs, scratch.limbs);
        cur.skip(tn.m_cs);
        const wide base = n - 1;
        bool witnessed = false;
        for (unsigned i = 0; i < tn.k_digits; ++i) {
            const wide d = scratch.divmod(base);
            if (nt::ss_predicate(n, 1 + d)) {
                r.bits_used += charged_bits(tn.m_cs, tn.k_digits, i);
                witnessed = true;
                break;
            }
        }
        if (!witnessed) {
            r.bits_used += tn.m_cs;
            ++r.violations;
        }
        ++verified;
    }
    return r;
}

Csss4Result csss_test_4(const BitReader& x, std::span<const nt::TestNumber> numbers) {
    if (numbers.empty()) throw DomainError("empty test-number list");
    Csss4Result r;
    r.per_n.reserve(numbers.size());
    for (const nt::TestNumber& tn : numbers) {
        r.per_n.push_back(csss4_one_number(x, tn));
        r.total_violations += r.per_n.back().violations;
    }
    return r;
}

std::string_view test_id_name(TestId t) {
    switch (t) {
        case TestId::borel: return "borel";
        case TestId::csss1: return "csss1";
        case TestId::csss2: return "csss2";
        case TestId::csss3: return "csss3";
        case TestId::csss4: return "csss4";
    }
    return "unknown";
}

std::optional<TestId> test_id_from_name(std::string_view name) {
    if (name == "borel") return TestId::borel;
    if (name == "csss1") return TestId::csss1;
    if (name == "csss2") return TestId::csss2;
    if (name == "csss3") return TestId::csss3;
    if (name == "csss4") return TestId::csss4;
    return std::nullopt;
}

namespace {

bool needs_carmichael(std::span<const TestId> tests) {
    for (TestId t : tests) {
        if (t == TestId::csss1 || t == TestId::csss2 || t == TestId::csss3) return true;
    }
    return false;
}

bool contains(std::span<const TestId> tests, TestId t) {
    for (TestId x : tests) {
        if (x == t) return true;
    }
    return false;
}

}  // namespace

std::vector<TestOutcome> run_sample(std::span<const BitString> strings,
                                    std::span<const TestId> tests, const RunOptions& options) {
    if (strings.empty()) throw DomainError("empty sample");
    if (tests.empty()) throw DomainError("no tests selected");
    if (needs_carmichael(tests) && options.carmichael.empty()) {
        throw DomainError("tests csss1-csss3 need a Carmichael list");
    }
    std::vector<nt::TestNumber> default_numbers;
    std::span<const nt::TestNumber> numbers = options.numbers;
    if (contains(tests, TestId::csss4) && numbers.empty()) {
        default_numbers = nt::make_test_numbers(nt::csss4_default_numbers());
        numbers = default_numbers;
    }

    struct Task {
        std::size_t index;
        bool complemented;
    };
    std::vector<Task> tasks;
    tasks.reserve(strings.size() * (options.complement ? 2 : 1));
    for (std::size_t i = 0; i < strings.size(); ++i) {
        tasks.push_back({i, false});
        if (options.complement) tasks.push_back({i, true});
    }

    std::vector<TestOutcome> outcomes(tasks.size() * tests.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= tasks.size()) return;
            const Task task = tasks[ti];
            const BitString& original = strings[task.index];
            BitString complemented_storage;
            const BitString* src = &original;
            if (task.complemented) {
                complemented_storage = original.complemented();
                src = &complemented_storage;
            }
            std::optional<LoopedView> looped;
            std::string loop_error;
            if (options.loop_to) {
                try {
                    looped.emplace(*src, *options.loop_to);
                } catch (const std::exception& e) {
                    loop_error = e.what();
                }
            }
            std::optional<Csss12Result> shared12;
            for (std::size_t tj = 0; tj < tests.size(); ++tj) {
                const TestId test = tests[tj];
                TestOutcome& o = outcomes[ti * tests.size() + tj];
                o.string_index = task.index;
                o.complemented = task.complemented;
                o.test = test;
                const bool is_csss = test != TestId::borel;
                if (is_csss && !loop_error.empty()) {
                    o.error = loop_error;
                    o.metric = std::numeric_limits<double>::quiet_NaN();
                    continue;
                }
                const BitReader csss_reader = looped ? BitReader(*looped) : BitReader(*src);
                if (is_csss && looped) o.repetitions = looped->repetitions();
                try {
                    switch (test) {
                        case TestId::borel: {
                            // The Borel test always reads the unlooped string.
                            const BitReader plain(*src);
                            o.borel_result = borel_metric(plain);
                            o.bias_value = bias(plain);
                            o.metric = o.borel_result->metric;
                            break;
                        }
                        case TestId::csss1:
                        case TestId::csss2: {
                            if (!shared12) {
                                shared12 = csss_test_1_2(csss_reader, options.carmichael);
                            }
                            o.csss12 = *shared12;
                            o.metric = static_cast<double>(test == TestId::csss1
                                                               ? shared12->witnesses_used
                                                               : shared12->bits_used);
                            break;
                        }
                        case TestId::csss3: {
                            o.csss3 = csss_test_3(csss_reader, options.carmichael);
                            o.metric = static_cast<double>(o.csss3->bits_used);
                            break;
                        }
                        case TestId::csss4: {
                            o.csss4 = csss_test_4(csss_reader, numbers);
                            o.metric = static_cast<double>(o.csss4->total_violations);
                            break;
                        }
                    }
                } catch (const std::exception& e) {
                    o.error = e.what();
                    o.metric = std::numeric_limits<double>::quiet_NaN();
                }
            }
        }
    };

    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1 || tasks.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned count = static_cast<unsigned>(
            std::min<std::size_t>(jobs, tasks.size()));
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return outcomes;
}

}  // namespace rngprobe
