#pragma once

// Multiplicative seasonality indices at three levels: month of year (SI1),
// day of week within a month (SI2) and hour of day within a weekday (SI3).
//
//   SI1[y,m]     = (D[y,m] / |M[y,m]|) / (D[y] / basis)
//   SI2[y,m,d]   = avg daily demand on weekday d of (y,m) / (avg daily demand of (y,m) * SI1bar[m])
//   SI3[y,m,d,h] = avg demand at hour h on weekday d of (y,m) / (avg hourly demand of those days * f)
//
// where f = SI1bar[m] * SI2bar[d] for the verbal form and 1 / (SI1bar[m] * SI2bar[d])
// for the symbolic form. Bars denote plain means over the supplied year range.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "loadstab/calendar.hpp"
#include "loadstab/error.hpp"
#include "loadstab/series.hpp"

namespace loadstab {

/// Table indexed [weekday - 1][hour - 1].
using SlotTable = std::array<std::array<double, kHoursPerDay>, kDaysPerWeek>;

enum class DayBasis {
    actual_days,  ///< divide the yearly total by 365 or 366; keeps sum_m |M| SI1 = days in year
    fixed_365,    ///< always 365
};

enum class HourlyForm {
    verbal,    ///< overall month and weekday indices multiply the denominator
    symbolic,  ///< overall month and weekday indices divide the denominator
};

struct MonthlySITable {
    YearRange years;
    DayBasis basis = DayBasis::actual_days;
    std::vector<std::array<double, kMonthsPerYear>> values;  // [year - first][month - 1]
    std::array<double, kMonthsPerYear> overall{};

    [[nodiscard]] double at(int year, unsigned month) const {
        check(year);
        return values[static_cast<std::size_t>(year - years.first)][month - 1];
    }
    [[nodiscard]] double overall_at(unsigned month) const { return overall.at(month - 1); }
    void check(int year) const {
        if (!years.contains(year)) {
            throw InputError("no monthly SI for year " + std::to_string(year));
        }
    }
};

struct WeekdaySITable {
    YearRange years;
    using MonthRow = std::array<std::array<double, kDaysPerWeek>, kMonthsPerYear>;
    std::vector<MonthRow> values;  // [year - first][month - 1][weekday - 1]
    std::array<double, kDaysPerWeek> overall{};

    [[nodiscard]] double at(int year, unsigned month, unsigned weekday) const {
        if (!years.contains(year)) {
            throw InputError("no weekday SI for year " + std::to_string(year));
        }
        return values[static_cast<std::size_t>(year - years.first)][month - 1][weekday - 1];
    }
    [[nodiscard]] double overall_at(unsigned weekday) const { return overall.at(weekday - 1); }
};

struct HourlySITable {
    YearRange years;
    HourlyForm form = HourlyForm::verbal;
    std::vector<std::array<SlotTable, kMonthsPerYear>> values;  // [year - first][month - 1][weekday - 1][hour - 1]
    std::array<double, kHoursPerDay> overall{};
    SlotTable mean_by_slot{};  ///< mean over (year, month) of SI3 for each (weekday, hour)

    [[nodiscard]] double at(int year, unsigned month, unsigned weekday, unsigned hour) const {
        if (!years.contains(year)) {
            throw InputError("no hourly SI for year " + std::to_string(year));
        }
        return values[static_cast<std::size_t>(year - years.first)][month - 1][weekday - 1][hour - 1];
    }

    /// The twelve monthly SI3 values of one year for one (weekday, hour).
    [[nodiscard]] std::array<double, kMonthsPerYear> monthly_samples(int year, unsigned weekday,
                                                                     unsigned hour) const {
        std::array<double, kMonthsPerYear> out{};
        for (unsigned m = 1; m <= kMonthsPerYear; ++m) {
            out[m - 1] = at(year, m, weekday, hour);
        }
        return out;
    }
};

struct SeasonalityOptions {
    DayBasis basis = DayBasis::actual_days;
    HourlyForm form = HourlyForm::verbal;
};

/// All three index levels computed over one year range.
struct SeasonalityIndexSet {
    MonthlySITable monthly;
    WeekdaySITable weekday;
    HourlySITable hourly;
};

namespace detail {

/// Demand sums per calendar slice, gathered in one pass.
struct DemandSums {
    struct Month {
        double total = 0.0;
        int days = 0;
        std::array<double, kDaysPerWeek> weekday_total{};
        std::array<int, kDaysPerWeek> weekday_days{};
        SlotTable hour_total{};
    };
    YearRange years;
    std::vector<std::array<Month, kMonthsPerYear>> months;
    std::vector<double> year_total;
};

inline DemandSums sum_demand(const HourlyLoadSeries& series, YearRange years) {
    series.require_complete(years);
    DemandSums sums{years, std::vector<std::array<DemandSums::Month, kMonthsPerYear>>(years.count()),
                    std::vector<double>(years.count(), 0.0)};
    const Day from = make_day(years.first, 1, 1);
    const Day to = make_day(years.last, 12, 31);
    const auto values = series.values();
    for (Day d = from; d <= to; d += std::chrono::days{1}) {
        const std::chrono::year_month_day ymd{d};
        const auto yi = static_cast<std::size_t>(static_cast<int>(ymd.year()) - years.first);
        auto& month = sums.months[yi][static_cast<unsigned>(ymd.month()) - 1];
        const unsigned wd = iso_weekday(d) - 1;
        const std::size_t base = *series.index_of(d, 1);
        double day_total = 0.0;
        for (int h = 0; h < kHoursPerDay; ++h) {
            const double v = values[base + static_cast<std::size_t>(h)];
            month.hour_total[wd][static_cast<std::size_t>(h)] += v;
            day_total += v;
        }
        month.total += day_total;
        month.days += 1;
        month.weekday_total[wd] += day_total;
        month.weekday_days[wd] += 1;
        sums.year_total[yi] += day_total;
    }
    return sums;
}

}  // namespace detail

[[nodiscard]] inline MonthlySITable compute_monthly_si(const HourlyLoadSeries& series, YearRange years,
                                                       DayBasis basis = DayBasis::actual_days) {
    const auto sums = detail::sum_demand(series, years);
    MonthlySITable t{years, basis, std::vector<std::array<double, kMonthsPerYear>>(years.count()), {}};
    for (std::size_t yi = 0; yi < sums.months.size(); ++yi) {
        const int year = years.first + static_cast<int>(yi);
        const double day_basis = basis == DayBasis::fixed_365 ? 365.0 : static_cast<double>(days_in_year(year));
        const double yearly_daily = sums.year_total[yi] / day_basis;
        if (!(yearly_daily > 0.0)) {
            throw DomainError("zero demand in year " + std::to_string(year));
        }
        for (unsigned m = 0; m < kMonthsPerYear; ++m) {
            const auto& month = sums.months[yi][m];
            if (month.days == 0) {
                throw InputError("empty month " + std::to_string(m + 1) + " in " + std::to_string(year));
            }
            t.values[yi][m] = (month.total / month.days) / yearly_daily;
        }
    }
    for (unsigned m = 0; m < kMonthsPerYear; ++m) {
        double s = 0.0;
        for (const auto& row : t.values) {
            s += row[m];
        }
        t.overall[m] = s / static_cast<double>(t.values.size());
    }
    return t;
}

[[nodiscard]] inline WeekdaySITable compute_weekday_si(const HourlyLoadSeries& series, const MonthlySITable& monthly) {
    const YearRange years = monthly.years;
    const auto sums = detail::sum_demand(series, years);
    WeekdaySITable t{years, std::vector<WeekdaySITable::MonthRow>(years.count()), {}};
    for (std::size_t yi = 0; yi < sums.months.size(); ++yi) {
        for (unsigned m = 0; m < kMonthsPerYear; ++m) {
            const auto& month = sums.months[yi][m];
            const double denom = (month.total / month.days) * monthly.overall[m];
            if (!(denom > 0.0)) {
                throw DomainError("zero average daily demand in month " + std::to_string(m + 1));
            }
            for (unsigned d = 0; d < kDaysPerWeek; ++d) {
                if (month.weekday_days[d] == 0) {
                    throw InputError("no " + std::string(kWeekdayNames[d]) + " in month " + std::to_string(m + 1));
                }
                t.values[yi][m][d] = (month.weekday_total[d] / month.weekday_days[d]) / denom;
            }
        }
    }
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        double s = 0.0;
        for (const auto& year : t.values) {
            for (const auto& month : year) {
                s += month[d];
            }
        }
        t.overall[d] = s / static_cast<double>(t.values.size() * kMonthsPerYear);
    }
    return t;
}

[[nodiscard]] inline HourlySITable compute_hourly_si(const HourlyLoadSeries& series, const MonthlySITable& monthly,
                                                     const WeekdaySITable& weekday,
                                                     HourlyForm form = HourlyForm::verbal) {
    if (!(monthly.years == weekday.years)) {
        throw ConfigError("monthly and weekday tables cover different years");
    }
    const YearRange years = monthly.years;
    const auto sums = detail::sum_demand(series, years);
    HourlySITable t{years, form, std::vector<std::array<SlotTable, kMonthsPerYear>>(years.count()), {}, {}};
    for (std::size_t yi = 0; yi < sums.months.size(); ++yi) {
        for (unsigned m = 0; m < kMonthsPerYear; ++m) {
            const auto& month = sums.months[yi][m];
            for (unsigned d = 0; d < kDaysPerWeek; ++d) {
                const double n = month.weekday_days[d];
                const double avg_hourly = month.weekday_total[d] / (kHoursPerDay * n);
                if (!(avg_hourly > 0.0)) {
                    throw DomainError("zero average daily demand for " + std::string(kWeekdayNames[d]) +
                                      " in month " + std::to_string(m + 1));
                }
                const double overall = monthly.overall[m] * weekday.overall[d];
                const double denom = form == HourlyForm::verbal ? avg_hourly * overall : avg_hourly / overall;
                for (unsigned h = 0; h < kHoursPerDay; ++h) {
                    t.values[yi][m][d][h] = (month.hour_total[d][h] / n) / denom;
                }
            }
        }
    }
    const double samples = static_cast<double>(t.values.size() * kMonthsPerYear);
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        for (unsigned h = 0; h < kHoursPerDay; ++h) {
            double s = 0.0;
            for (const auto& year : t.values) {
                for (const auto& month : year) {
                    s += month[d][h];
                }
            }
            t.mean_by_slot[d][h] = s / samples;
        }
    }
    for (unsigned h = 0; h < kHoursPerDay; ++h) {
        double s = 0.0;
        for (unsigned d = 0; d < kDaysPerWeek; ++d) {
            s += t.mean_by_slot[d][h];
        }
        t.overall[h] = s / kDaysPerWeek;
    }
    return t;
}

[[nodiscard]] inline SeasonalityIndexSet compute_seasonality(const HourlyLoadSeries& series, YearRange years,
                                                             const SeasonalityOptions& options = {}) {
    SeasonalityIndexSet set;
    set.monthly = compute_monthly_si(series, years, options.basis);
    set.weekday = compute_weekday_si(series, set.monthly);
    set.hourly = compute_hourly_si(series, set.monthly, set.weekday, options.form);
    return set;
}

/// Five-number summary of one (weekday, hour) slot across (year, month) samples.
struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

/// Linear-interpolation quantile of sorted data (the usual "type 7" rule).
[[nodiscard]] inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) {
        throw InputError("quantile of empty sample");
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

using SlotBoxTable = std::array<std::array<BoxSummary, kHoursPerDay>, kDaysPerWeek>;

/// Distribution of SI3 for each (weekday, hour), for box plots.
[[nodiscard]] inline SlotBoxTable si_boxplot_data(const HourlySITable& table) {
    if (table.values.empty()) {
        throw InputError("empty hourly SI table");
    }
    SlotBoxTable out{};
    std::vector<double> samples;
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        for (unsigned h = 0; h < kHoursPerDay; ++h) {
            samples.clear();
            for (const auto& year : table.values) {
                for (const auto& month : year) {
                    samples.push_back(month[d][h]);
                }
            }
            std::sort(samples.begin(), samples.end());
            out[d][h] = {samples.front(), quantile_sorted(samples, 0.25), quantile_sorted(samples, 0.5),
                         quantile_sorted(samples, 0.75), samples.back(), samples.size()};
        }
    }
    return out;
}

}  // namespace loadstab
