#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rngprobe/error.hpp"

namespace rngprobe::stats {

enum class Family { unspecified, prng, qrng };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws ParseError

/// Identifies a dataset: which generator produced it, which test's metric
/// it holds, and whether the strings were complemented first.
struct DatasetKey {
    std::string generator;
    std::string test;
    bool complemented = false;
    Family family = Family::unspecified;

    std::string label() const;
};

/// One sample of per-string metric values.
struct Dataset {
    DatasetKey key;
    std::vector<double> values;
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct SwResult {
    double w = 0.0;
    double p_value = 0.0;
};

struct WelchResult {
    double t = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test. D is the largest ECDF gap over the
/// pooled sample points; the p-value comes from the limiting Kolmogorov
/// distribution at sqrt(n_a n_b / (n_a + n_b)) * D. Needs >= 2 values per
/// side, all finite.
KsResult ks_two_sample(const Dataset& a, const Dataset& b);

/// Shapiro-Wilk normality test (Royston's approximation). Sample size must
/// be in [3, 5000] with a nonzero range.
SwResult shapiro_wilk(const Dataset& a);

/// Welch's two-sided t-test with Welch-Satterthwaite degrees of freedom.
/// Errors when both samples have zero variance.
WelchResult welch_t(const Dataset& a, const Dataset& b);

// Underlying special functions, exposed for direct verification.
double kolmogorov_sf(double x);
double incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, double dof);
double normal_cdf(double x);
double normal_quantile(double p);

struct CompareThresholds {
    double significance = 0.005;  // KS / Welch significance level
    double normality = 0.05;      // Shapiro-Wilk gate
};

struct ComparisonReport {
    DatasetKey a;
    DatasetKey b;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    bool cross_orientation = false;

    double ks_statistic = 0.0;
    double ks_p = 1.0;
    double sw_p_a = 0.0;
    double sw_p_b = 0.0;
    bool welch_applied = false;
    double welch_t_value = 0.0;
    double welch_dof = 0.0;
    double welch_p = 0.0;
    bool significant_ks = false;
    bool significant_welch = false;

    std::string skipped;  // nonempty == pair not compared, with the reason
};

/// Pairwise comparison protocol over labeled datasets sharing a test id:
/// every same-orientation pair of distinct generators is compared, and
/// original-vs-complemented pairs are added for generator pairs whose
/// families differ (or are unknown). Welch's t-test runs only when both
/// sides pass the Shapiro-Wilk gate.
std::vector<ComparisonReport> compare_all(std::span<const Dataset> samples,
                                          const CompareThresholds& thresholds = {});

}  // namespace rngprobe::stats
