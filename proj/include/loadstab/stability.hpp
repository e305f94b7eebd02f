#pragma once

// Year-to-year stability of the hourly seasonality indices.
//
// For two years the twelve monthly SI3 values of one (weekday, hour) slot are
// compared with two one-tailed t-tests against a growing margin eps:
//   left:  H0 mean_a - mean_b >= eps
//   right: H0 mean_a - mean_b <= -eps
// The smallest eps on the step grid at which both reject bounds the difference.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "loadstab/error.hpp"
#include "loadstab/seasonality.hpp"
#include "loadstab/stats.hpp"

namespace loadstab {

struct StabilityConfig {
    double epsilon_step = 0.001;
    double epsilon_cap = 1.0;
    double alpha = 0.05;
    stats::VarianceModel variance = stats::VarianceModel::welch;

    void validate() const {
        if (!(epsilon_step > 0.0) || !(epsilon_step <= epsilon_cap)) {
            throw ConfigError("stability needs 0 < epsilon_step <= epsilon_cap");
        }
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw ConfigError("stability alpha must lie in (0, 1)");
        }
    }
};

struct PairEpsilon {
    double epsilon = 0.0;
    bool capped = false;  ///< no double rejection up to the cap
};

/// Smallest margin k * step at which both one-tailed tests reject.
[[nodiscard]] inline PairEpsilon epsilon_for_pair(const stats::SampleSummary& a, const stats::SampleSummary& b,
                                                  const StabilityConfig& config = {}) {
    config.validate();
    const double scale = std::max({1.0, std::abs(a.mean), std::abs(b.mean)});
    if (a.sd <= stats::kDegenerateTolerance * scale && b.sd <= stats::kDegenerateTolerance * scale &&
        std::abs(a.mean - b.mean) <= stats::kDegenerateTolerance * scale) {
        return {0.0, false};
    }
    const auto steps = static_cast<long>(std::floor(config.epsilon_cap / config.epsilon_step + 1e-9));
    for (long k = 0; k <= steps; ++k) {
        const double eps = static_cast<double>(k) * config.epsilon_step;
        const auto left = stats::one_tailed_test(a, b, eps, stats::Tail::left, config.alpha, config.variance);
        if (!left.rejected) {
            continue;
        }
        const auto right = stats::one_tailed_test(a, b, -eps, stats::Tail::right, config.alpha, config.variance);
        if (right.rejected) {
            return {eps, false};
        }
    }
    return {static_cast<double>(steps) * config.epsilon_step, true};
}

[[nodiscard]] inline PairEpsilon epsilon_for_pair(std::span<const double> a, std::span<const double> b,
                                                  const StabilityConfig& config = {}) {
    if (a.size() != kMonthsPerYear || b.size() != kMonthsPerYear) {
        throw InputError("epsilon_for_pair expects one value per month");
    }
    return epsilon_for_pair(stats::summarize(a), stats::summarize(b), config);
}

/// Means of a (weekday, hour) table over weekday (Mon-Fri), weekend and all days.
struct SlotAggregates {
    std::array<double, kHoursPerDay> weekday_by_hour{};
    std::array<double, kHoursPerDay> weekend_by_hour{};
    std::array<double, kHoursPerDay> week_by_hour{};
    std::array<double, kDaysPerWeek> by_day{};
    double weekday = 0.0;
    double weekend = 0.0;
    double overall = 0.0;
};

[[nodiscard]] inline SlotAggregates aggregate_slots(const SlotTable& t) {
    SlotAggregates a;
    double wd = 0.0, we = 0.0;
    for (unsigned h = 0; h < kHoursPerDay; ++h) {
        double sw = 0.0, se = 0.0;
        for (unsigned d = 0; d < 5; ++d) {
            sw += t[d][h];
        }
        for (unsigned d = 5; d < kDaysPerWeek; ++d) {
            se += t[d][h];
        }
        a.weekday_by_hour[h] = sw / 5.0;
        a.weekend_by_hour[h] = se / 2.0;
        a.week_by_hour[h] = (sw + se) / kDaysPerWeek;
        wd += sw;
        we += se;
    }
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        double s = 0.0;
        for (double v : t[d]) {
            s += v;
        }
        a.by_day[d] = s / kHoursPerDay;
    }
    a.weekday = wd / (5.0 * kHoursPerDay);
    a.weekend = we / (2.0 * kHoursPerDay);
    a.overall = (wd + we) / (double{kDaysPerWeek} * kHoursPerDay);
    return a;
}

struct StabilityReport {
    YearRange years;
    StabilityConfig config;
    std::size_t pair_count = 0;
    SlotTable epsilon_hat{};   ///< max over year pairs
    SlotTable epsilon_mean{};  ///< mean over year pairs
    std::array<std::array<bool, kHoursPerDay>, kDaysPerWeek> capped{};
    std::size_t capped_slots = 0;
    std::size_t capped_pairs = 0;

    bool has_delta = false;
    SlotTable mu{};
    SlotTable delta{};       ///< percent, from epsilon_hat
    SlotTable delta_mean{};  ///< percent, from epsilon_mean
    SlotAggregates aggregates;
    SlotAggregates aggregates_mean;

    /// Overall delta below `threshold_percent` and no slot hit the cap.
    [[nodiscard]] bool stable(double threshold_percent) const {
        if (!has_delta) {
            throw InputError("stability verdict needs the delta table");
        }
        return capped_slots == 0 && aggregates.overall < threshold_percent;
    }
};

[[nodiscard]] inline StabilityReport epsilon_hat_table(const HourlySITable& hourly, YearRange years,
                                                       const StabilityConfig& config = {}) {
    config.validate();
    if (years.count() < 2) {
        throw InputError("stability needs at least two years");
    }
    if (!hourly.years.contains(years)) {
        throw InputError("hourly SI table does not cover years " + std::to_string(years.first) + "-" +
                         std::to_string(years.last));
    }
    StabilityReport r;
    r.years = years;
    r.config = config;
    const auto n = static_cast<std::size_t>(years.count());
    r.pair_count = n * (n - 1) / 2;
    std::vector<stats::SampleSummary> per_year(n);
    for (unsigned d = 1; d <= kDaysPerWeek; ++d) {
        for (unsigned h = 1; h <= kHoursPerDay; ++h) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto samples = hourly.monthly_samples(years.first + static_cast<int>(i), d, h);
                per_year[i] = stats::summarize(samples);
            }
            double best = 0.0, sum = 0.0;
            bool capped = false;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const auto e = epsilon_for_pair(per_year[i], per_year[j], config);
                    best = std::max(best, e.epsilon);
                    sum += e.epsilon;
                    if (e.capped) {
                        capped = true;
                        ++r.capped_pairs;
                    }
                }
            }
            r.epsilon_hat[d - 1][h - 1] = best;
            r.epsilon_mean[d - 1][h - 1] = sum / static_cast<double>(r.pair_count);
            r.capped[d - 1][h - 1] = capped;
            r.capped_slots += capped ? 1 : 0;
        }
    }
    return r;
}

/// Adds delta = eps / mu in percent, plus weekday/weekend/week aggregates.
[[nodiscard]] inline StabilityReport delta_table(StabilityReport report, const SlotTable& mu) {
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        for (unsigned h = 0; h < kHoursPerDay; ++h) {
            if (!(mu[d][h] > 0.0)) {
                throw DomainError("mean SI must be positive at " + std::string(kWeekdayNames[d]) + " " +
                                  hour_label(h + 1));
            }
            report.delta[d][h] = report.epsilon_hat[d][h] / mu[d][h] * 100.0;
            report.delta_mean[d][h] = report.epsilon_mean[d][h] / mu[d][h] * 100.0;
        }
    }
    report.mu = mu;
    report.has_delta = true;
    report.aggregates = aggregate_slots(report.delta);
    report.aggregates_mean = aggregate_slots(report.delta_mean);
    return report;
}

/// Full analysis: SI tables over `years`, then epsilon and delta tables.
[[nodiscard]] inline StabilityReport analyze_stability(const HourlySITable& hourly, YearRange years,
                                                       const StabilityConfig& config = {}) {
    return delta_table(epsilon_hat_table(hourly, years, config), hourly.mean_by_slot);
}

}  // namespace loadstab
