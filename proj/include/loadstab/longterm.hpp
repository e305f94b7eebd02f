#pragma once

// Annual demand from GDP by simple regression, spread over the hours of a
// target year with seasonality indices.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "loadstab/error.hpp"
#include "loadstab/seasonality.hpp"
#include "loadstab/series.hpp"
#include "loadstab/stats.hpp"

namespace loadstab {

enum class SISource {
    baseline_year,  ///< indices of the baseline year itself
    overall_mean,   ///< means over the whole training window
};

struct ForecastSpec {
    int target_year = 0;
    int baseline_year = 0;
    int gdp_report_year = 0;
    SISource si_source = SISource::baseline_year;

    /// Five-year-ahead setup: baseline and GDP vintage four years before the target.
    static ForecastSpec five_year_ahead(int target_year, SISource source = SISource::baseline_year) {
        return {target_year, target_year - 4, target_year - 4, source};
    }

    void validate() const {
        if (baseline_year >= target_year) {
            throw ConfigError("baseline year must precede the target year");
        }
    }
};

/// Regression of annual load on GDP over every year up to `baseline_year`.
/// GDP comes from the `report_year` vintage (default: the baseline year).
[[nodiscard]] inline stats::LinearModel fit_annual_model(const AnnualLoadSeries& annual, const GdpTable& gdp,
                                                         int baseline_year,
                                                         std::optional<int> report_year = std::nullopt) {
    const int report = report_year.value_or(baseline_year);
    std::vector<double> x, y;
    for (const auto& [year, total] : annual.totals) {
        if (year > baseline_year) {
            break;
        }
        x.push_back(gdp.value(report, year));
        y.push_back(total);
    }
    if (x.size() < 3) {
        throw InputError("annual model needs at least three training years up to " + std::to_string(baseline_year));
    }
    return stats::ols_fit(x, y);
}

[[nodiscard]] inline double predict_annual(const stats::LinearModel& model, const GdpTable& gdp,
                                           const ForecastSpec& spec) {
    return model.predict(gdp.value(spec.gdp_report_year, spec.target_year));
}

struct HourlyForecast {
    HourlyLoadSeries values;         ///< whole target year
    double annual_total = 0.0;
    double deseasonalized_base = 0.0;  ///< annual_total / (365 * 24)
};

inline constexpr double kBaseHoursPerYear = 365.0 * kHoursPerDay;

/// base * SI1[m] * SI2[m,d] * SI3[m,d,h] on the target year's calendar.
[[nodiscard]] inline HourlyForecast disaggregate_hourly(double annual_forecast, const SeasonalityIndexSet& si,
                                                        const ForecastSpec& spec, int target_calendar) {
    const bool own = spec.si_source == SISource::baseline_year;
    const int b = spec.baseline_year;
    if (own && !si.hourly.years.contains(b)) {
        throw InputError("no seasonality indices for baseline year " + std::to_string(b));
    }
    const Day first = make_day(target_calendar, 1, 1);
    const auto days = static_cast<std::size_t>(days_in_year(target_calendar));
    HourlyForecast f{HourlyLoadSeries("", UnitConvention::summed_half_hours, first, days), annual_forecast,
                     annual_forecast / kBaseHoursPerYear};
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto s = f.values.slot(i);
        const double product =
            own ? si.monthly.at(b, s.month) * si.weekday.at(b, s.month, s.weekday) *
                      si.hourly.at(b, s.month, s.weekday, s.hour)
                : si.monthly.overall_at(s.month) * si.weekday.overall_at(s.weekday) *
                      si.hourly.mean_by_slot[s.weekday - 1][s.hour - 1];
        f.values.set(i, std::max(0.0, f.deseasonalized_base * product));
    }
    return f;
}

/// Disaggregation of a caller-supplied annual total.
[[nodiscard]] inline HourlyForecast external_annual_override(double total, const SeasonalityIndexSet& si,
                                                             const ForecastSpec& spec, int target_calendar) {
    if (!(total > 0.0)) {
        throw DomainError("annual override must be positive");
    }
    return disaggregate_hourly(total, si, spec, target_calendar);
}

struct EvaluationResult {
    double yearly_pct_error = 0.0;
    double hourly_mape = 0.0;
    std::array<double, kMonthsPerYear> per_month_mape{};
    std::size_t slots = 0;          ///< slots entering the MAPE
    std::size_t excluded_zero = 0;  ///< slots skipped because the actual is 0
};

[[nodiscard]] inline EvaluationResult evaluate_forecast(const HourlyLoadSeries& forecast,
                                                        const HourlyLoadSeries& actual) {
    EvaluationResult r;
    double sum_actual = 0.0, sum_forecast = 0.0, sum_ape = 0.0;
    std::array<double, kMonthsPerYear> month_ape{};
    std::array<std::size_t, kMonthsPerYear> month_n{};
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        if (!forecast.has(i)) {
            continue;
        }
        const auto slot = forecast.slot(i);
        const auto j = actual.index_of(slot);
        if (!j || !actual.has(*j)) {
            throw InputError("no actual demand for " + format_date(day_of(slot)) + " hour " +
                             std::to_string(slot.hour));
        }
        const double a = actual[*j];
        const double f = forecast[i];
        sum_actual += a;
        sum_forecast += f;
        if (a == 0.0) {
            ++r.excluded_zero;
            continue;
        }
        const double ape = std::abs(a - f) / a * 100.0;
        sum_ape += ape;
        month_ape[slot.month - 1] += ape;
        ++month_n[slot.month - 1];
        ++r.slots;
    }
    if (r.slots == 0 || !(sum_actual > 0.0)) {
        throw InputError("forecast and actual share no usable slots");
    }
    r.yearly_pct_error = std::abs(sum_actual - sum_forecast) / sum_actual * 100.0;
    r.hourly_mape = sum_ape / static_cast<double>(r.slots);
    for (unsigned m = 0; m < kMonthsPerYear; ++m) {
        r.per_month_mape[m] = month_n[m] ? month_ape[m] / static_cast<double>(month_n[m]) : std::nan("");
    }
    return r;
}

}  // namespace loadstab
