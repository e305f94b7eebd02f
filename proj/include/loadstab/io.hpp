#pragma once

// Canonical hourly CSV (date,hour,demand) and table CSVs laid out with one row
// per hour (1:00 ... 0:00) and one column per weekday.

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "loadstab/calendar.hpp"
#include "loadstab/csv.hpp"
#include "loadstab/error.hpp"
#include "loadstab/ingest.hpp"
#include "loadstab/seasonality.hpp"
#include "loadstab/series.hpp"
#include "loadstab/stability.hpp"

namespace loadstab {

/// Writes every present slot as date,hour,value, with round-trip precision
/// unless `report_digits` asks for six significant digits.
inline void write_hourly_csv(std::ostream& out, const HourlyLoadSeries& s, std::string_view value_column = "demand",
                             bool report_digits = false) {
    out << "date,hour," << value_column << '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.has(i)) {
            continue;
        }
        out << format_date(s.day_at(i)) << ',' << (i % kHoursPerDay + 1) << ',' << (report_digits ? csv::sig6(s[i]) : csv::exact(s[i])) << '\n';
    }
}

[[nodiscard]] inline HourlyLoadSeries read_hourly_csv(std::istream& in, const std::string& country = "",
                                                      UnitConvention unit = UnitConvention::summed_half_hours) {
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) {
        throw InputError("empty hourly file");
    }
    const auto header = csv::split(line);
    if (header.size() < 3 || header[0] != "date" || header[1] != "hour") {
        throw InputError("hourly file must start with date,hour,<value>");
    }
    struct Row {
        Day day;
        unsigned hour;
        double value;
    };
    std::vector<Row> rows;
    while (csv::next_line(in, line, line_no)) {
        const auto f = csv::split(line);
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (f.size() < 3) {
            throw InputError(where + "expected 3 fields");
        }
        const auto t = parse_civil_time(f[0] + " 00:00");
        const auto h = csv::parse_int(f[1]);
        const auto v = csv::parse_double(f[2]);
        if (!h || *h < 1 || *h > kHoursPerDay) {
            throw InputError(where + "hour must be 1..24");
        }
        if (!v) {
            throw InputError(where + "bad value '" + f[2] + "'");
        }
        rows.push_back({std::chrono::floor<std::chrono::days>(t), static_cast<unsigned>(*h), *v});
    }
    if (rows.empty()) {
        throw InputError("hourly file has no rows");
    }
    Day first = rows.front().day, last = rows.front().day;
    for (const auto& r : rows) {
        first = std::min(first, r.day);
        last = std::max(last, r.day);
    }
    HourlyLoadSeries s(country, unit, first, static_cast<std::size_t>((last - first).count() + 1));
    for (const auto& r : rows) {
        const auto i = *s.index_of(r.day, r.hour);
        if (s.has(i)) {
            throw InputError("duplicate slot " + format_date(r.day) + " hour " + std::to_string(r.hour));
        }
        s.set(i, r.value);
    }
    return s;
}

/// One JSON object per line: {"slot":{"date":..,"hour":..},"action":..,"original":..,"replacement":..}
inline void write_cleaning_jsonl(std::ostream& out, const std::vector<CleaningEntry>& report) {
    for (const auto& e : report) {
        out << "{\"slot\":{\"date\":\"" << format_date(day_of(e.slot)) << "\",\"hour\":" << e.slot.hour
            << "},\"action\":\"" << to_string(e.action) << "\",\"original\":"
            << (e.original ? csv::sig6(*e.original) : std::string("null"))
            << ",\"replacement\":" << csv::sig6(e.replacement) << "}\n";
    }
}

namespace detail {

inline void weekday_header(std::ostream& out, bool with_aggregates) {
    out << "hour";
    for (auto name : kWeekdayNames) {
        out << ',' << name;
    }
    if (with_aggregates) {
        out << ",Weekday,Weekend,Week";
    }
    out << '\n';
}

}  // namespace detail

/// Rows 1:00 ... 0:00, columns Monday ... Sunday.
inline void write_slot_table(std::ostream& out, const SlotTable& t) {
    detail::weekday_header(out, false);
    for (unsigned h = 0; h < kHoursPerDay; ++h) {
        out << hour_label(h + 1);
        for (unsigned d = 0; d < kDaysPerWeek; ++d) {
            out << ',' << csv::sig6(t[d][h]);
        }
        out << '\n';
    }
}

/// Slot table plus Weekday/Weekend/Week columns and an Overall row.
inline void write_aggregated_table(std::ostream& out, const SlotTable& t) {
    const auto a = aggregate_slots(t);
    detail::weekday_header(out, true);
    for (unsigned h = 0; h < kHoursPerDay; ++h) {
        out << hour_label(h + 1);
        for (unsigned d = 0; d < kDaysPerWeek; ++d) {
            out << ',' << csv::sig6(t[d][h]);
        }
        out << ',' << csv::sig6(a.weekday_by_hour[h]) << ',' << csv::sig6(a.weekend_by_hour[h]) << ','
            << csv::sig6(a.week_by_hour[h]) << '\n';
    }
    out << "Overall";
    for (double v : a.by_day) {
        out << ',' << csv::sig6(v);
    }
    out << ',' << csv::sig6(a.weekday) << ',' << csv::sig6(a.weekend) << ',' << csv::sig6(a.overall) << '\n';
}

/// Reads a table written by `write_slot_table` or `write_aggregated_table`.
[[nodiscard]] inline SlotTable read_slot_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) {
        throw InputError("empty slot table");
    }
    SlotTable t{};
    for (unsigned h = 0; h < kHoursPerDay; ++h) {
        if (!csv::next_line(in, line, line_no)) {
            throw InputError("slot table needs 24 hour rows");
        }
        const auto f = csv::split(line);
        if (f.size() < 1 + kDaysPerWeek) {
            throw InputError("slot table line " + std::to_string(line_no) + " has too few columns");
        }
        for (unsigned d = 0; d < kDaysPerWeek; ++d) {
            const auto v = csv::parse_double(f[d + 1]);
            if (!v) {
                throw InputError("slot table line " + std::to_string(line_no) + ": bad number '" + f[d + 1] + "'");
            }
            t[d][h] = *v;
        }
    }
    return t;
}

/// year,month,si
inline void write_monthly_si(std::ostream& out, const MonthlySITable& t) {
    out << "year,month,si\n";
    for (int y = t.years.first; y <= t.years.last; ++y) {
        for (unsigned m = 1; m <= kMonthsPerYear; ++m) {
            out << y << ',' << m << ',' << csv::sig6(t.at(y, m)) << '\n';
        }
    }
    for (unsigned m = 1; m <= kMonthsPerYear; ++m) {
        out << "overall," << m << ',' << csv::sig6(t.overall_at(m)) << '\n';
    }
}

/// year,month,Monday..Sunday
inline void write_weekday_si(std::ostream& out, const WeekdaySITable& t) {
    out << "year,month";
    for (auto name : kWeekdayNames) {
        out << ',' << name;
    }
    out << '\n';
    for (int y = t.years.first; y <= t.years.last; ++y) {
        for (unsigned m = 1; m <= kMonthsPerYear; ++m) {
            out << y << ',' << m;
            for (unsigned d = 1; d <= kDaysPerWeek; ++d) {
                out << ',' << csv::sig6(t.at(y, m, d));
            }
            out << '\n';
        }
    }
    out << "overall,";
    for (unsigned d = 1; d <= kDaysPerWeek; ++d) {
        out << ',' << csv::sig6(t.overall_at(d));
    }
    out << '\n';
}

/// weekday,hour,min,q1,median,q3,max,n
inline void write_boxplot(std::ostream& out, const SlotBoxTable& box) {
    out << "weekday,hour,min,q1,median,q3,max,n\n";
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        for (unsigned h = 0; h < kHoursPerDay; ++h) {
            const auto& b = box[d][h];
            out << kWeekdayNames[d] << ',' << hour_label(h + 1) << ',' << csv::sig6(b.min) << ','
                << csv::sig6(b.q1) << ',' << csv::sig6(b.median) << ',' << csv::sig6(b.q3) << ','
                << csv::sig6(b.max) << ',' << b.count << '\n';
        }
    }
}

/// year,total
inline void write_annual_csv(std::ostream& out, const AnnualLoadSeries& a) {
    out << "year,total\n";
    for (const auto& [y, v] : a.totals) {
        out << y << ',' << csv::exact(v) << '\n';
    }
}

[[nodiscard]] inline AnnualLoadSeries read_annual_csv(std::istream& in, const std::string& country = "") {
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) {
        throw InputError("empty annual file");
    }
    AnnualLoadSeries a{country, {}};
    while (csv::next_line(in, line, line_no)) {
        const auto f = csv::split(line);
        const auto y = f.size() >= 2 ? csv::parse_int(f[0]) : std::nullopt;
        const auto v = f.size() >= 2 ? csv::parse_double(f[1]) : std::nullopt;
        if (!y || !v) {
            throw InputError("annual file line " + std::to_string(line_no) + ": expected year,total");
        }
        if (!a.totals.emplace(*y, *v).second) {
            throw InputError("annual file repeats year " + std::to_string(*y));
        }
    }
    return a;
}

}  // namespace loadstab
