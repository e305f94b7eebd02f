#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loadstab/calendar.hpp"
#include "loadstab/error.hpp"

namespace loadstab {

enum class UnitConvention {
    summed_half_hours,  ///< sum of the two half-hourly MW readings of the hour
    native_hourly,      ///< source already hourly
};

/// Dense hourly demand over a contiguous run of whole days.
///
/// Index i maps to day `first_day() + i / 24` and hour-ending label `i % 24 + 1`.
/// Absent slots hold NaN. Extra readings for an already-filled civil hour
/// (DST fall-back in native hourly sources) are kept in `duplicates()` until
/// cleaning merges them.
class HourlyLoadSeries {
public:
    HourlyLoadSeries() = default;

    HourlyLoadSeries(std::string country, UnitConvention unit, Day first_day, std::size_t days)
        : country_(std::move(country)),
          unit_(unit),
          first_day_(first_day),
          values_(days * kHoursPerDay, std::numeric_limits<double>::quiet_NaN()) {}

    static HourlyLoadSeries from_values(std::string country, UnitConvention unit, Day first_day,
                                        std::vector<double> values) {
        if (values.size() % kHoursPerDay != 0) {
            throw InputError("hourly values must cover whole days");
        }
        HourlyLoadSeries s(std::move(country), unit, first_day, 0);
        for (double v : values) {
            if (!std::isnan(v) && !(v >= 0.0)) {
                throw InputError("negative or invalid demand value");
            }
        }
        s.values_ = std::move(values);
        return s;
    }

    [[nodiscard]] const std::string& country() const { return country_; }
    [[nodiscard]] UnitConvention unit() const { return unit_; }
    [[nodiscard]] Day first_day() const { return first_day_; }
    [[nodiscard]] Day last_day() const { return first_day_ + std::chrono::days{day_count()} - std::chrono::days{1}; }
    [[nodiscard]] std::size_t day_count() const { return values_.size() / kHoursPerDay; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool empty() const { return values_.empty(); }

    [[nodiscard]] bool has(std::size_t i) const { return !std::isnan(values_.at(i)); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    void set(std::size_t i, double v) {
        if (!(v >= 0.0)) {
            throw InputError("negative or invalid demand at " + format_date(day_at(i)) + " hour " +
                             std::to_string(i % kHoursPerDay + 1));
        }
        values_.at(i) = v;
    }
    void clear(std::size_t i) { values_.at(i) = std::numeric_limits<double>::quiet_NaN(); }

    [[nodiscard]] Day day_at(std::size_t i) const { return first_day_ + std::chrono::days{i / kHoursPerDay}; }
    [[nodiscard]] CalendarSlot slot(std::size_t i) const {
        return make_slot(day_at(i), static_cast<unsigned>(i % kHoursPerDay + 1));
    }

    [[nodiscard]] std::optional<std::size_t> index_of(Day d, unsigned hour) const {
        const auto offset = (d - first_day_).count();
        if (offset < 0 || static_cast<std::size_t>(offset) >= day_count() || hour < 1 || hour > 24) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(offset) * kHoursPerDay + (hour - 1);
    }
    [[nodiscard]] std::optional<std::size_t> index_of(const CalendarSlot& s) const {
        return index_of(day_of(s), s.hour);
    }

    [[nodiscard]] std::size_t missing_count() const {
        std::size_t n = 0;
        for (double v : values_) {
            n += std::isnan(v) ? 1 : 0;
        }
        return n;
    }

    void add_duplicate(std::size_t i, double v) {
        if (!(v >= 0.0)) {
            throw InputError("negative or invalid duplicate demand value");
        }
        duplicates_[i].push_back(v);
    }
    [[nodiscard]] const std::map<std::size_t, std::vector<double>>& duplicates() const { return duplicates_; }
    void clear_duplicates() { duplicates_.clear(); }

    /// Calendar years lying entirely inside the covered day range.
    [[nodiscard]] YearRange full_years() const {
        if (empty()) {
            return {};
        }
        const std::chrono::year_month_day a{first_day_};
        const std::chrono::year_month_day b{last_day()};
        int first = static_cast<int>(a.year());
        int last = static_cast<int>(b.year());
        if (!(static_cast<unsigned>(a.month()) == 1 && static_cast<unsigned>(a.day()) == 1)) {
            ++first;
        }
        if (!(static_cast<unsigned>(b.month()) == 12 && static_cast<unsigned>(b.day()) == 31)) {
            --last;
        }
        return {first, last};
    }

    /// Copy restricted to whole years; throws if the range is not covered.
    [[nodiscard]] HourlyLoadSeries slice(YearRange years) const {
        if (!full_years().contains(years)) {
            throw InputError("series does not cover years " + std::to_string(years.first) + "-" +
                             std::to_string(years.last));
        }
        const Day from = make_day(years.first, 1, 1);
        const Day to = make_day(years.last, 12, 31);
        const auto begin = static_cast<std::size_t>((from - first_day_).count()) * kHoursPerDay;
        const auto end = static_cast<std::size_t>((to - first_day_).count() + 1) * kHoursPerDay;
        HourlyLoadSeries out(country_, unit_, from, 0);
        out.values_.assign(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                           values_.begin() + static_cast<std::ptrdiff_t>(end));
        return out;
    }

    /// Throws unless every slot of every year in `years` holds a value.
    void require_complete(YearRange years) const {
        if (years.count() == 0 || !full_years().contains(years)) {
            throw InputError("series does not cover whole years " + std::to_string(years.first) + "-" +
                             std::to_string(years.last));
        }
        const auto begin = *index_of(make_day(years.first, 1, 1), 1);
        const auto end = *index_of(make_day(years.last, 12, 31), 24);
        for (std::size_t i = begin; i <= end; ++i) {
            if (std::isnan(values_[i])) {
                throw InputError("missing demand at " + format_date(day_at(i)) + " hour " +
                                 std::to_string(i % kHoursPerDay + 1) + "; clean gaps first");
            }
        }
    }

private:
    std::string country_;
    UnitConvention unit_ = UnitConvention::native_hourly;
    Day first_day_{};
    std::vector<double> values_;
    std::map<std::size_t, std::vector<double>> duplicates_;
};

/// Total demand per calendar year.
struct AnnualLoadSeries {
    std::string country;
    std::map<int, double> totals;

    [[nodiscard]] double at(int year) const {
        const auto it = totals.find(year);
        if (it == totals.end()) {
            throw InputError("no annual total for " + std::to_string(year));
        }
        return it->second;
    }
};

enum class GdpFlag { actual, forecast };

/// GDP by publication vintage: (report_year, target_year) -> value.
struct GdpTable {
    struct Entry {
        double value = 0.0;
        GdpFlag flag = GdpFlag::forecast;
    };

    std::string country;
    std::map<std::pair<int, int>, Entry> entries;

    [[nodiscard]] std::optional<Entry> find(int report_year, int target_year) const {
        const auto it = entries.find({report_year, target_year});
        if (it == entries.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] double value(int report_year, int target_year) const {
        const auto e = find(report_year, target_year);
        if (!e) {
            throw InputError("GDP vintage " + std::to_string(report_year) + " has no entry for " +
                             std::to_string(target_year));
        }
        return e->value;
    }
};

}  // namespace loadstab
