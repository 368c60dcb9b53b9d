#include <algorithm>
#include <iostream>
#include <set>

#include "commands.hpp"
#include "rngprobe/stats.hpp"

namespace rngprobe::cli {

int cmd_compare(const CompareArgs& args) {
    if (args.results.size() < 2) throw DomainError("compare needs at least two result files");

    std::vector<records::ResultRecord> all;
    std::set<std::string> common_tests;
    for (std::size_t i = 0; i < args.results.size(); ++i) {
        const auto recs = records::read_jsonl(args.results[i]);
        std::set<std::string> tests;
        for (const auto& r : recs) {
            if (r.error.empty()) tests.insert(r.test);
        }
        if (i == 0) {
            common_tests = tests;
        } else {
            std::set<std::string> inter;
            std::set_intersection(common_tests.begin(), common_tests.end(), tests.begin(),
                                  tests.end(), std::inserter(inter, inter.begin()));
            common_tests = std::move(inter);
        }
        all.insert(all.end(), recs.begin(), recs.end());
    }
    if (common_tests.empty()) {
        throw DomainError("result files share no test id");
    }
    if (!args.test.empty()) {
        if (common_tests.count(args.test) == 0) {
            throw DomainError("test id '" + args.test + "' is not present in every result file");
        }
        common_tests = {args.test};
    }

    const auto datasets = records::to_datasets(all);
    stats::CompareThresholds thresholds{args.sig_threshold, args.normal_threshold};

    std::vector<stats::ComparisonReport> reports;
    for (const std::string& test : common_tests) {
        std::vector<stats::Dataset> selected;
        for (const auto& d : datasets) {
            if (d.key.test == test) selected.push_back(d);
        }
        if (selected.size() < 2 && !args.include_self) continue;
        if (selected.size() >= 2) {
            auto part = stats::compare_all(selected, thresholds);
            reports.insert(reports.end(), part.begin(), part.end());
        }
        if (args.include_self) {
            for (const auto& d : selected) {
                stats::ComparisonReport rep;
                rep.a = d.key;
                rep.b = d.key;
                rep.n_a = rep.n_b = d.values.size();
                if (d.values.size() < 2) {
                    rep.skipped = "sample too small";
                } else {
                    const auto ks = stats::ks_two_sample(d, d);
                    rep.ks_statistic = ks.statistic;
                    rep.ks_p = ks.p_value;
                    rep.significant_ks = ks.p_value < thresholds.significance;
                    double swp = -1.0;
                    try {
                        swp = stats::shapiro_wilk(d).p_value;
                    } catch (const Error&) {
                    }
                    rep.sw_p_a = rep.sw_p_b = swp;
                    if (swp >= thresholds.normality) {
                        try {
                            const auto wt = stats::welch_t(d, d);
                            rep.welch_applied = true;
                            rep.welch_t_value = wt.t;
                            rep.welch_dof = wt.dof;
                            rep.welch_p = wt.p_value;
                            rep.significant_welch = wt.p_value < thresholds.significance;
                        } catch (const Error&) {
                        }
                    }
                }
                reports.push_back(std::move(rep));
            }
        }
    }

    std::filesystem::create_directories(args.out_dir);
    records::write_compare_csv(args.out_dir / "compare.csv", reports);
    records::write_compare_jsonl(args.out_dir / "compare.jsonl", reports);

    std::size_t significant = 0;
    for (const auto& r : reports) {
        if (r.significant_ks || r.significant_welch) ++significant;
    }
    std::cout << reports.size() << " comparisons over " << common_tests.size() << " test id(s); "
              << significant << " significant\n";
    return kOk;
}

}  // namespace rngprobe::cli
