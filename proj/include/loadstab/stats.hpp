#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>

#include <boost/math/special_functions/beta.hpp>

#include "loadstab/error.hpp"

namespace loadstab::stats {

/// Student-t cumulative distribution via the regularized incomplete beta
/// function: for t >= 0, P(T <= t) = 1 - I_x(df/2, 1/2) / 2 with x = df / (df + t^2).
[[nodiscard]] inline double t_cdf(double t, double df) {
    if (!(df > 0.0) || std::isnan(df)) {
        throw DomainError("t distribution needs df > 0");
    }
    if (std::isnan(t)) {
        throw DomainError("t statistic is NaN");
    }
    if (std::isinf(t)) {
        return t > 0 ? 1.0 : 0.0;
    }
    if (t == 0.0) {
        return 0.5;
    }
    const double x = df / (df + t * t);
    // For |t| small, x is close to 1 and the complement is more accurate.
    const double tail = x < 0.5 ? 0.5 * boost::math::ibeta(0.5 * df, 0.5, x)
                                : 0.5 * boost::math::ibetac(0.5, 0.5 * df, 1.0 - x);
    return t > 0 ? 1.0 - tail : tail;
}

/// Quantile of the Student-t distribution by bisection on `t_cdf`.
[[nodiscard]] inline double t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("t quantile needs 0 < p < 1");
    }
    double lo = -1.0;
    double hi = 1.0;
    while (t_cdf(lo, df) > p) {
        lo *= 2.0;
    }
    while (t_cdf(hi, df) < p) {
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (t_cdf(mid, df) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< n - 1 denominator
};

[[nodiscard]] inline SampleSummary summarize(std::span<const double> x) {
    if (x.size() < 2) {
        throw DomainError("sample summary needs at least two values");
    }
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    return {x.size(), mean, std::sqrt(ss / (n - 1.0))};
}

enum class Tail {
    left,   ///< H0: mu_a - mu_b >= shift
    right,  ///< H0: mu_a - mu_b <= shift
};

enum class VarianceModel { welch, pooled };

struct TestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
    bool rejected = false;
};

/// Relative tolerance below which a standard error counts as zero.
inline constexpr double kDegenerateTolerance = 1e-12;

/// Two-sample one-tailed t-test of the mean difference against `shift`.
///
/// Zero-variance samples get defined outcomes: if the observed difference
/// equals `shift`, p = 0.5 and H0 stands; otherwise p is 0 or 1 by sign.
[[nodiscard]] inline TestResult one_tailed_test(const SampleSummary& a, const SampleSummary& b, double shift,
                                                Tail tail, double alpha = 0.05,
                                                VarianceModel model = VarianceModel::welch) {
    if (a.n < 2 || b.n < 2) {
        throw DomainError("t-test needs at least two observations per sample");
    }
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double va = a.sd * a.sd / na;
    const double vb = b.sd * b.sd / nb;
    double se = 0.0;
    double df = 0.0;
    if (model == VarianceModel::welch) {
        se = std::sqrt(va + vb);
        const double denom = va * va / (na - 1.0) + vb * vb / (nb - 1.0);
        df = denom > 0.0 ? (va + vb) * (va + vb) / denom : na + nb - 2.0;
    } else {
        df = na + nb - 2.0;
        const double pooled = ((na - 1.0) * a.sd * a.sd + (nb - 1.0) * b.sd * b.sd) / df;
        se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    }

    const double diff = (a.mean - b.mean) - shift;
    const double scale = std::max({1.0, std::abs(a.mean), std::abs(b.mean)});
    TestResult r;
    r.degrees_of_freedom = df;
    if (se <= kDegenerateTolerance * scale) {
        if (std::abs(diff) <= kDegenerateTolerance * scale) {
            r.t_statistic = 0.0;
            r.p_value = 0.5;
        } else {
            r.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
            const bool below = diff < 0;
            r.p_value = (tail == Tail::left) == below ? 0.0 : 1.0;
        }
    } else {
        r.t_statistic = diff / se;
        r.p_value = tail == Tail::left ? t_cdf(r.t_statistic, df) : t_cdf(-r.t_statistic, df);
    }
    r.rejected = r.p_value < alpha;
    return r;
}

/// Welch variant of `one_tailed_test`.
[[nodiscard]] inline TestResult one_tailed_welch_test(const SampleSummary& a, const SampleSummary& b, double shift,
                                                      Tail tail, double alpha = 0.05) {
    return one_tailed_test(a, b, shift, tail, alpha, VarianceModel::welch);
}

/// Simple linear regression y = intercept + slope * x.
struct LinearModel {
    double intercept = 0.0;
    double slope = 0.0;
    double se_intercept = 0.0;
    double se_slope = 0.0;
    double p_intercept = 1.0;
    double p_slope = 1.0;
    double r_squared = 0.0;
    std::size_t n = 0;

    [[nodiscard]] double predict(double x) const { return intercept + slope * x; }
};

/// Closed-form OLS with intercept; standard errors from the residual variance
/// on n - 2 degrees of freedom, two-sided p-values.
[[nodiscard]] inline LinearModel ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("ols_fit: x and y differ in length");
    }
    if (x.size() < 3) {
        throw DomainError("ols_fit needs at least three points");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw DomainError("ols_fit: singular design (constant x)");
    }
    LinearModel m;
    m.n = x.size();
    m.slope = sxy / sxx;
    m.intercept = my - m.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - m.predict(x[i]);
        ssr += e * e;
    }
    m.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    const double sigma2 = ssr / (n - 2.0);
    m.se_slope = std::sqrt(sigma2 / sxx);
    m.se_intercept = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    const auto two_sided = [&](double coef, double se) {
        if (se == 0.0) {
            return coef == 0.0 ? 1.0 : 0.0;
        }
        return 2.0 * t_cdf(-std::abs(coef / se), n - 2.0);
    };
    m.p_slope = two_sided(m.slope, m.se_slope);
    m.p_intercept = two_sided(m.intercept, m.se_intercept);
    return m;
}

/// Sample Pearson correlation.
[[nodiscard]] inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("pearson needs two equal-length sequences of at least two values");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw DomainError("pearson correlation undefined for a constant sequence");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace loadstab::stats
