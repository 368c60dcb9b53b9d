#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "rngprobe/csss.hpp"

namespace rngprobe::cli {

namespace {

std::string two_sig_figs(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", v);
    return buf;
}

}  // namespace

int cmd_table1(const Table1Args& args) {
    const auto numbers = nt::make_test_numbers(nt::csss4_default_numbers());

    // Observed violation frequencies, averaged per string over any supplied
    // fourth-test result records.
    std::map<std::string, std::pair<double, std::uint64_t>> observed;  // n -> (sum p_obs, count)
    for (const auto& file : args.results) {
        for (const auto& rec : records::read_jsonl(file)) {
            if (rec.test != "csss4" || !rec.error.empty()) continue;
            for (const auto& pn : rec.per_n) {
                auto& slot = observed[pn.n];
                if (pn.witnesses_checked > 0) {
                    slot.first += static_cast<double>(pn.violations) /
                                  static_cast<double>(pn.witnesses_checked);
                }
                slot.second += 1;
            }
        }
    }

    std::ofstream out(args.out, std::ios::trunc);
    if (!out) throw IoError("cannot open " + args.out.string() + " for writing");
    out << "n,m,k,p_ss,p_ss_exact" << (observed.empty() ? "" : ",p_obs") << "\n";
    for (const auto& tn : numbers) {
        const std::string n = nt::to_string(tn.n);
        out << n << ',' << tn.m_cs << ',' << tn.k_digits << ',' << two_sig_figs(tn.p_ss) << ','
            << records::format_double(tn.p_ss);
        if (!observed.empty()) {
            const auto it = observed.find(n);
            if (it != observed.end() && it->second.second > 0) {
                out << ',' << records::format_double(it->second.first /
                                                     static_cast<double>(it->second.second));
            } else {
                out << ',';
            }
        }
        out << "\n";
    }
    if (!out) throw IoError("write failure on " + args.out.string());
    std::cout << args.out.string() << ": " << numbers.size() << " rows\n";
    return kOk;
}

}  // namespace rngprobe::cli
