#pragma once

// Load and GDP ingestion: CSV parsing, half-hour to hour conversion, gap
// cleaning and annual aggregation.

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loadstab/calendar.hpp"
#include "loadstab/csv.hpp"
#include "loadstab/error.hpp"
#include "loadstab/series.hpp"

namespace loadstab {

struct RawLoadRecord {
    CivilTime timestamp;
    double demand = 0.0;

    friend bool operator==(const RawLoadRecord&, const RawLoadRecord&) = default;
};

/// Column-name configuration for a load CSV.
struct LoadSchema {
    std::string time_column = "datetime";
    std::string demand_column = "mw";
    std::string time_format = "%Y-%m-%d %H:%M";
    char delimiter = ',';
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct LoadParseResult {
    std::vector<RawLoadRecord> records;
    std::vector<RowError> errors;
};

/// Parses a delimited load file. Rows that fail to parse are collected in
/// `errors` with their 1-based line numbers; the rest are returned in file order.
[[nodiscard]] inline LoadParseResult parse_load_csv(std::istream& in, const LoadSchema& schema = {}) {
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) {
        throw InputError("load file is empty");
    }
    const auto header = csv::split(line, schema.delimiter);
    const auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ConfigError("load file has no column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t time_col = column(schema.time_column);
    const std::size_t value_col = column(schema.demand_column);

    LoadParseResult result;
    while (csv::next_line(in, line, line_no)) {
        const auto fields = csv::split(line, schema.delimiter);
        if (fields.size() <= std::max(time_col, value_col)) {
            result.errors.push_back({line_no, "too few fields"});
            continue;
        }
        RawLoadRecord rec;
        try {
            rec.timestamp = parse_civil_time(fields[time_col], schema.time_format);
        } catch (const InputError& e) {
            result.errors.push_back({line_no, e.what()});
            continue;
        }
        const auto v = csv::parse_double(fields[value_col]);
        if (!v) {
            result.errors.push_back({line_no, "unparseable demand '" + fields[value_col] + "'"});
            continue;
        }
        if (*v < 0.0) {
            result.errors.push_back({line_no, "negative demand " + fields[value_col]});
            continue;
        }
        rec.demand = *v;
        result.records.push_back(rec);
    }
    return result;
}

namespace detail {

inline std::vector<RawLoadRecord> sorted_unique(std::span<const RawLoadRecord> records) {
    std::vector<RawLoadRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].timestamp == sorted[i - 1].timestamp) {
            throw InputError("duplicate timestamp " + format_civil_time(sorted[i].timestamp));
        }
    }
    return sorted;
}

/// Builds a series over [first, last] day from per-slot accumulations.
template <typename Fill>
HourlyLoadSeries build_series(const std::string& country, UnitConvention unit, Day first, Day last, Fill&& fill) {
    HourlyLoadSeries series(country, unit, first, static_cast<std::size_t>((last - first).count() + 1));
    fill(series);
    return series;
}

}  // namespace detail

/// Sums the two half-hourly readings of each hour into the hour-ending slot:
/// slot H = reading(H-0:30) + reading(H:00). Hours missing either reading are
/// left absent for `clean_gaps`.
[[nodiscard]] inline HourlyLoadSeries halfhourly_to_hourly(std::span<const RawLoadRecord> records,
                                                           const std::string& country = "") {
    if (records.empty()) {
        throw InputError("no half-hourly records");
    }
    const auto sorted = detail::sorted_unique(records);

    struct Halves {
        std::optional<double> first;
        std::optional<double> second;
    };
    std::map<CivilTime, Halves> hours;  // keyed by hour end
    for (const auto& r : sorted) {
        const auto minute = r.timestamp.time_since_epoch().count() % 60;
        if (minute == 30) {
            hours[r.timestamp + std::chrono::minutes{30}].first = r.demand;
        } else if (minute == 0) {
            hours[r.timestamp].second = r.demand;
        } else {
            throw InputError("reading at " + format_civil_time(r.timestamp) +
                             " is not on the 30-minute cadence");
        }
    }

    std::optional<Day> first_day;
    std::optional<Day> last_day;
    for (const auto& [end, h] : hours) {
        if (h.first && h.second) {
            const Day d = day_of(slot_ending_at(end));
            if (!first_day) {
                first_day = d;
            }
            last_day = d;
        }
    }
    if (!first_day) {
        throw InputError("no hour has both half-hourly readings");
    }
    return detail::build_series(country, UnitConvention::summed_half_hours, *first_day, *last_day,
                                [&](HourlyLoadSeries& s) {
                                    for (const auto& [end, h] : hours) {
                                        if (!h.first || !h.second) {
                                            continue;
                                        }
                                        if (const auto idx = s.index_of(slot_ending_at(end))) {
                                            s.set(*idx, *h.first + *h.second);
                                        }
                                    }
                                });
}

/// Which end of the hour a native hourly timestamp marks.
enum class HourMark { end, start };

/// Places native hourly readings on the calendar. A second reading for an
/// already-filled civil hour (DST fall-back) is kept as a duplicate.
[[nodiscard]] inline HourlyLoadSeries native_hourly(std::span<const RawLoadRecord> records,
                                                    const std::string& country = "",
                                                    HourMark mark = HourMark::start) {
    if (records.empty()) {
        throw InputError("no hourly records");
    }
    const auto to_slot = [mark](CivilTime t) {
        if (t.time_since_epoch().count() % 60 != 0) {
            throw InputError("hourly reading at " + format_civil_time(t) + " is not on the hour");
        }
        return slot_ending_at(mark == HourMark::end ? t : t + std::chrono::hours{1});
    };
    Day first = day_of(to_slot(records.front().timestamp));
    Day last = first;
    for (const auto& r : records) {
        const Day d = day_of(to_slot(r.timestamp));
        first = std::min(first, d);
        last = std::max(last, d);
    }
    return detail::build_series(country, UnitConvention::native_hourly, first, last, [&](HourlyLoadSeries& s) {
        for (const auto& r : records) {
            const auto idx = *s.index_of(to_slot(r.timestamp));
            if (s.has(idx)) {
                s.add_duplicate(idx, r.demand);
            } else {
                s.set(idx, r.demand);
            }
        }
    });
}

struct GapPolicy {
    /// Interior gaps up to this many hours are linearly interpolated.
    std::size_t max_interp_len = 6;
    /// Gaps touching the start or end of the series up to this many hours are
    /// copied from one week later (start) or earlier (end); longer ones fail.
    std::size_t max_edge_gap = 24;
};

enum class CleaningAction { duplicate_mean, interpolated, week_prior, week_after };

[[nodiscard]] inline std::string_view to_string(CleaningAction a) {
    switch (a) {
        case CleaningAction::duplicate_mean: return "duplicate_mean";
        case CleaningAction::interpolated: return "interpolated";
        case CleaningAction::week_prior: return "week_prior";
        case CleaningAction::week_after: return "week_after";
    }
    return "unknown";
}

struct CleaningEntry {
    std::size_t index = 0;
    CalendarSlot slot;
    CleaningAction action = CleaningAction::interpolated;
    std::optional<double> original;  ///< empty for filled gaps
    double replacement = 0.0;
};

struct CleanResult {
    HourlyLoadSeries series;
    std::vector<CleaningEntry> report;
};

/// Merges duplicated hours by their mean and fills absent slots. Every
/// modified slot appears in the report; no other slot changes.
[[nodiscard]] inline CleanResult clean_gaps(const HourlyLoadSeries& input, const GapPolicy& policy = {}) {
    constexpr std::size_t kWeek = 7 * kHoursPerDay;
    CleanResult out{input, {}};
    HourlyLoadSeries& s = out.series;

    for (const auto& [idx, extra] : input.duplicates()) {
        double sum = input[idx];
        for (double v : extra) {
            sum += v;
        }
        const double mean = sum / static_cast<double>(extra.size() + 1);
        s.set(idx, mean);
        out.report.push_back({idx, s.slot(idx), CleaningAction::duplicate_mean, input[idx], mean});
    }
    s.clear_duplicates();

    struct Run {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < s.size();) {
        if (s.has(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !s.has(j)) {
            ++j;
        }
        runs.push_back({i, j});
        i = j;
    }

    const auto fill = [&](std::size_t i, CleaningAction action, double v) {
        s.set(i, v);
        out.report.push_back({i, s.slot(i), action, std::nullopt, v});
    };
    const auto gap_text = [&](const Run& r) {
        return std::to_string(r.end - r.begin) + "-hour gap starting " + format_date(s.day_at(r.begin)) +
               " hour " + std::to_string(r.begin % kHoursPerDay + 1);
    };

    std::optional<Run> leading;
    for (const Run& r : runs) {
        const std::size_t len = r.end - r.begin;
        if (r.begin == 0) {
            if (len > policy.max_edge_gap || r.end == s.size()) {
                throw UnrecoverableGapError("unrecoverable " + gap_text(r) + " at series start");
            }
            leading = r;
            continue;
        }
        if (r.end == s.size()) {
            if (len > policy.max_edge_gap) {
                throw UnrecoverableGapError("unrecoverable " + gap_text(r) + " at series end");
            }
        } else if (len <= policy.max_interp_len) {
            const double left = s[r.begin - 1];
            const double right = s[r.end];
            for (std::size_t k = 0; k < len; ++k) {
                const double w = static_cast<double>(k + 1) / static_cast<double>(len + 1);
                fill(r.begin + k, CleaningAction::interpolated, left + (right - left) * w);
            }
            continue;
        }
        for (std::size_t i = r.begin; i < r.end; ++i) {
            if (i >= kWeek && s.has(i - kWeek)) {
                fill(i, CleaningAction::week_prior, s[i - kWeek]);
            } else if (i + kWeek < s.size() && s.has(i + kWeek)) {
                fill(i, CleaningAction::week_after, s[i + kWeek]);
            } else {
                throw UnrecoverableGapError("no week-shifted value for " + gap_text(r));
            }
        }
    }
    if (leading) {
        for (std::size_t i = leading->end; i-- > leading->begin;) {
            if (i + kWeek < s.size() && s.has(i + kWeek)) {
                fill(i, CleaningAction::week_after, s[i + kWeek]);
            } else {
                throw UnrecoverableGapError("no week-shifted value for " + gap_text(*leading));
            }
        }
    }
    std::stable_sort(out.report.begin(), out.report.end(),
                     [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
}

/// Total demand per calendar year. The series must start on Jan 1 and end on
/// Dec 31 with no absent slots.
[[nodiscard]] inline AnnualLoadSeries aggregate_annual(const HourlyLoadSeries& series) {
    if (series.empty()) {
        throw InputError("empty series");
    }
    const std::chrono::year_month_day a{series.first_day()};
    const std::chrono::year_month_day b{series.last_day()};
    if (static_cast<unsigned>(a.month()) != 1 || static_cast<unsigned>(a.day()) != 1) {
        throw InputError("partial year " + std::to_string(static_cast<int>(a.year())) + " at series start");
    }
    if (static_cast<unsigned>(b.month()) != 12 || static_cast<unsigned>(b.day()) != 31) {
        throw InputError("partial year " + std::to_string(static_cast<int>(b.year())) + " at series end");
    }
    AnnualLoadSeries out{series.country(), {}};
    const auto values = series.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::isnan(values[i])) {
            throw InputError("partial year " + std::to_string(series.slot(i).year) + ": missing demand at " +
                             format_date(series.day_at(i)));
        }
    }
    std::size_t i = 0;
    for (int y = static_cast<int>(a.year()); y <= static_cast<int>(b.year()); ++y) {
        const std::size_t n = static_cast<std::size_t>(days_in_year(y)) * kHoursPerDay;
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            total += values[i + k];
        }
        i += n;
        if (!(total > 0.0)) {
            throw InputError("non-positive annual total for " + std::to_string(y));
        }
        out.totals[y] = total;
    }
    return out;
}

/// Reads a GDP vintage table with columns report_year,target_year,gdp[,flag].
/// Rows with an empty gdp cell are skipped. An empty or missing flag means
/// forecast when target_year >= report_year and actual otherwise.
[[nodiscard]] inline GdpTable load_gdp_table(std::istream& in, const std::string& country = "") {
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) {
        throw InputError("GDP file is empty");
    }
    const auto header = csv::split(line);
    const auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto report_col = column("report_year");
    const auto target_col = column("target_year");
    const auto gdp_col = column("gdp");
    const auto flag_col = column("flag");
    if (!report_col || !target_col || !gdp_col) {
        throw ConfigError("GDP file needs columns report_year,target_year,gdp");
    }

    GdpTable table{country, {}};
    while (csv::next_line(in, line, line_no)) {
        const auto f = csv::split(line);
        const auto at = [&](std::size_t c) { return c < f.size() ? std::string_view(f[c]) : std::string_view{}; };
        const auto report = csv::parse_int(at(*report_col));
        const auto target = csv::parse_int(at(*target_col));
        if (!report || !target) {
            throw InputError("GDP line " + std::to_string(line_no) + ": bad year");
        }
        if (csv::trim(at(*gdp_col)).empty()) {
            continue;
        }
        const auto gdp = csv::parse_double(at(*gdp_col));
        if (!gdp) {
            throw InputError("GDP line " + std::to_string(line_no) + ": bad value");
        }
        GdpFlag flag = *target >= *report ? GdpFlag::forecast : GdpFlag::actual;
        if (flag_col) {
            const auto text = csv::trim(at(*flag_col));
            if (text == "actual") {
                flag = GdpFlag::actual;
            } else if (text == "forecast") {
                flag = GdpFlag::forecast;
            } else if (!text.empty()) {
                throw InputError("GDP line " + std::to_string(line_no) + ": unknown flag '" + std::string(text) + "'");
            }
        }
        if (!table.entries.emplace(std::pair{*report, *target}, GdpTable::Entry{*gdp, flag}).second) {
            throw InputError("duplicate GDP entry (" + std::to_string(*report) + ", " + std::to_string(*target) + ")");
        }
    }
    return table;
}

}  // namespace loadstab
