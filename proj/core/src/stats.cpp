#include "rngprobe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rngprobe::stats {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw DomainError(std::string(what) + " contains a non-finite value");
    }
}

double poly(std::span<const double> c, double x) {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::prng: return "prng";
        case Family::qrng: return "qrng";
        case Family::unspecified: return "unspecified";
    }
    return "unspecified";
}

Family family_from_name(const std::string& name) {
    if (name == "prng") return Family::prng;
    if (name == "qrng") return Family::qrng;
    if (name == "unspecified" || name.empty()) return Family::unspecified;
    throw ParseError("unknown generator family '" + name + "'");
}

std::string DatasetKey::label() const {
    return generator + "/" + test + (complemented ? "/complemented" : "/original");
}

double kolmogorov_sf(double x) {
    if (!(x > 0.0)) return 1.0;
    if (x >= 8.0) return 0.0;
    if (x <= 0.82757355518990733) {
        // Theta-function form, accurate for small x where the alternating
        // series converges too slowly.
        const double w = std::sqrt(2.0 * M_PI) / x;
        const double z = -M_PI * M_PI / (8.0 * x * x);
        double sum = 0.0;
        for (int j = 1; j < 20; j += 2) {
            const double term = std::exp(z * j * j);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return 1.0 - w * sum;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 200; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Continued fraction for the regularized incomplete beta (Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta needs positive shape parameters");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (!(dof > 0.0)) throw DomainError("degrees of freedom must be positive");
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    // Wichura's algorithm AS 241 (the double-precision variant).
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("normal quantile needs p in (0,1)");
    static constexpr double a[] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                                   1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                   4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                   3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr double b[] = {1.0,
                                   4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                   5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                   3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                   5.2264952788528545610e+3};
    static constexpr double c[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                   5.76949722146069140550e0, 3.64784832476320460504e0,
                                   1.27045825245236838258e0, 2.41780725177450611770e-1,
                                   2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[] = {1.0,
                                   2.05319162663775882187e0, 1.67638483018380384940e0,
                                   6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                   1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                   1.05075007164441684324e-9};
    static constexpr double e[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                   1.78482653991729133580e0, 2.96560571828504891230e-1,
                                   2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                   2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[] = {1.0,
                                   5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                   1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                   1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                   2.04426310338993978564e-15};
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        double num = a[7], den = b[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + a[i];
            den = den * r + b[i];
        }
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        double num = c[7], den = d[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + c[i];
            den = den * r + d[i];
        }
        v = num / den;
    } else {
        r -= 5.0;
        double num = e[7], den = f[7];
        for (int i = 6; i >= 0; --i) {
            num = num * r + e[i];
            den = den * r + f[i];
        }
        v = num / den;
    }
    return q < 0.0 ? -v : v;
}

KsResult ks_two_sample(const Dataset& a, const Dataset& b) {
    if (a.values.size() < 2 || b.values.size() < 2) {
        throw DomainError("Kolmogorov-Smirnov needs at least 2 values per sample");
    }
    require_finite(a.values, "dataset");
    require_finite(b.values, "dataset");
    std::vector<double> sa = a.values;
    std::vector<double> sb = b.values;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    // Evaluate the ECDF gap at every pooled sample point; ties advance both
    // sides before the gap is taken.
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double en = na * nb / (na + nb);
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(std::sqrt(en) * d);
    return r;
}

SwResult shapiro_wilk(const Dataset& a) {
    // Royston's approximation (AS R94), uncensored samples.
    const std::size_t n = a.values.size();
    if (n < 3 || n > 5000) throw DomainError("Shapiro-Wilk needs a sample size in [3, 5000]");
    require_finite(a.values, "dataset");
    std::vector<double> x = a.values;
    std::sort(x.begin(), x.end());
    if (x.front() == x.back()) throw DomainError("Shapiro-Wilk needs a nonzero sample range");

    const double an = static_cast<double>(n);
    const std::size_t half = n / 2;
    std::vector<double> w(half);
    if (n == 3) {
        w[0] = std::sqrt(0.5);
    } else {
        double summ2 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            w[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
            summ2 += 2.0 * w[i] * w[i];
        }
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
        static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
        const double a1 = poly(c1, rsn) - w[0] / ssumm2;
        std::size_t middle_start;
        double fac;
        if (n > 5) {
            const double a2 = poly(c2, rsn) - w[1] / ssumm2;
            fac = std::sqrt((summ2 - 2.0 * w[0] * w[0] - 2.0 * w[1] * w[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            w[1] = a2;
            middle_start = 2;
        } else {
            fac = std::sqrt((summ2 - 2.0 * w[0] * w[0]) / (1.0 - 2.0 * a1 * a1));
            middle_start = 1;
        }
        w[0] = a1;
        for (std::size_t i = middle_start; i < half; ++i) w[i] = -w[i] / fac;
    }

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= an;
    double ssq = 0.0;
    for (double v : x) ssq += (v - mean) * (v - mean);
    double num = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        num += w[i] * (x[n - 1 - i] - x[i]);
    }
    double W = num * num / ssq;
    if (W > 1.0) W = 1.0;

    SwResult r;
    r.w = W;
    const double w1 = 1.0 - W;
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6/pi
        constexpr double stqr = 1.04719755119660;  // asin(sqrt(3/4))
        r.p_value = std::clamp(pi6 * (std::asin(std::sqrt(W)) - stqr), 0.0, 1.0);
        return r;
    }
    if (w1 <= 0.0) {
        r.p_value = 1.0;
        return r;
    }
    double y = std::log(w1);
    double mu, sigma;
    if (n <= 11) {
        static constexpr double g[] = {-2.273, 0.459};
        static constexpr double c3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
        static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
        const double gamma = poly(g, an);
        if (y >= gamma) {
            r.p_value = std::numeric_limits<double>::min();
            return r;
        }
        y = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
    } else {
        static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
        static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
        const double ln_n = std::log(an);
        mu = poly(c5, ln_n);
        sigma = std::exp(poly(c6, ln_n));
    }
    r.p_value = std::clamp(1.0 - normal_cdf((y - mu) / sigma), 0.0, 1.0);
    return r;
}

WelchResult welch_t(const Dataset& a, const Dataset& b) {
    const std::size_t na = a.values.size();
    const std::size_t nb = b.values.size();
    if (na < 2 || nb < 2) throw DomainError("Welch's t-test needs at least 2 values per sample");
    require_finite(a.values, "dataset");
    require_finite(b.values, "dataset");
    double ma = 0.0, mb = 0.0;
    for (double v : a.values) ma += v;
    for (double v : b.values) mb += v;
    ma /= static_cast<double>(na);
    mb /= static_cast<double>(nb);
    double va = 0.0, vb = 0.0;
    for (double v : a.values) va += (v - ma) * (v - ma);
    for (double v : b.values) vb += (v - mb) * (v - mb);
    va /= static_cast<double>(na - 1);
    vb /= static_cast<double>(nb - 1);
    const double sa = va / static_cast<double>(na);
    const double sb = vb / static_cast<double>(nb);
    if (sa + sb == 0.0) throw DomainError("Welch's t-test is undefined for two zero-variance samples");
    WelchResult r;
    r.t = (ma - mb) / std::sqrt(sa + sb);
    r.dof = (sa + sb) * (sa + sb) /
            (sa * sa / static_cast<double>(na - 1) + sb * sb / static_cast<double>(nb - 1));
    r.p_value = r.t == 0.0 ? 1.0 : student_t_two_sided_p(r.t, r.dof);
    return r;
}

std::vector<ComparisonReport> compare_all(std::span<const Dataset> samples,
                                          const CompareThresholds& thresholds) {
    if (samples.size() < 2) throw DomainError("comparison needs at least 2 datasets");
    // Shapiro-Wilk once per dataset; failures recorded as a failed gate.
    std::vector<double> sw_p(samples.size(), -1.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        try {
            sw_p[i] = shapiro_wilk(samples[i]).p_value;
        } catch (const Error&) {
            sw_p[i] = -1.0;  // gate cannot pass
        }
    }
    std::vector<ComparisonReport> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const Dataset& da = samples[i];
            const Dataset& db = samples[j];
            if (da.key.test != db.key.test) continue;
            const bool cross = da.key.complemented != db.key.complemented;
            if (cross) {
                if (da.key.generator == db.key.generator) continue;
                // Original-vs-complemented comparisons target pairs from
                // different families; unknown families stay included.
                if (da.key.family != Family::unspecified &&
                    db.key.family != Family::unspecified &&
                    da.key.family == db.key.family) {
                    continue;
                }
            } else if (da.key.generator == db.key.generator) {
                continue;
            }
            ComparisonReport rep;
            rep.a = da.key;
            rep.b = db.key;
            rep.n_a = da.values.size();
            rep.n_b = db.values.size();
            rep.cross_orientation = cross;
            if (da.values.size() < 2 || db.values.size() < 2) {
                rep.skipped = "sample too small";
                out.push_back(std::move(rep));
                continue;
            }
            const KsResult ks = ks_two_sample(da, db);
            rep.ks_statistic = ks.statistic;
            rep.ks_p = ks.p_value;
            rep.significant_ks = ks.p_value < thresholds.significance;
            rep.sw_p_a = sw_p[i];
            rep.sw_p_b = sw_p[j];
            if (sw_p[i] >= thresholds.normality && sw_p[j] >= thresholds.normality) {
                try {
                    const WelchResult wt = welch_t(da, db);
                    rep.welch_applied = true;
                    rep.welch_t_value = wt.t;
                    rep.welch_dof = wt.dof;
                    rep.welch_p = wt.p_value;
                    rep.significant_welch = wt.p_value < thresholds.significance;
                } catch (const Error&) {
                    rep.welch_applied = false;
                }
            }
            out.push_back(std::move(rep));
        }
    }
    return out;
}

}  // namespace rngprobe::stats
