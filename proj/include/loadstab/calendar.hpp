#pragma once

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "loadstab/error.hpp"

namespace loadstab {

/// Naive local civil time at minute resolution. No time-zone conversion is
/// ever applied: demand patterns follow the wall clock.
using CivilTime = std::chrono::sys_time<std::chrono::minutes>;
using Day = std::chrono::sys_days;

inline constexpr int kHoursPerDay = 24;
inline constexpr int kDaysPerWeek = 7;
inline constexpr int kMonthsPerYear = 12;

inline constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

/// Inclusive range of calendar years.
struct YearRange {
    int first = 0;
    int last = -1;

    [[nodiscard]] int count() const { return last >= first ? last - first + 1 : 0; }
    [[nodiscard]] bool contains(int y) const { return y >= first && y <= last; }
    [[nodiscard]] bool contains(const YearRange& o) const {
        return o.count() > 0 && contains(o.first) && contains(o.last);
    }
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

[[nodiscard]] inline bool is_leap(int year) {
    return std::chrono::year{year}.is_leap();
}

[[nodiscard]] inline unsigned days_in_month(int year, unsigned month) {
    using namespace std::chrono;
    return static_cast<unsigned>(
        year_month_day_last{std::chrono::year{year}, month_day_last{std::chrono::month{month}}}.day());
}

[[nodiscard]] inline int days_in_year(int year) { return is_leap(year) ? 366 : 365; }

[[nodiscard]] inline Day make_day(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw InputError("invalid civil date " + std::to_string(year) + "-" + std::to_string(month) +
                         "-" + std::to_string(day));
    }
    return Day{ymd};
}

/// ISO weekday, 1 = Monday ... 7 = Sunday.
[[nodiscard]] inline unsigned iso_weekday(Day d) {
    return std::chrono::weekday{d}.iso_encoding();
}

/// One hour of the civil calendar. `hour` is the hour-ending label 1..24:
/// hour 1 covers 00:00-01:00, hour 24 covers 23:00-24:00.
struct CalendarSlot {
    int year = 0;
    unsigned month = 1;
    unsigned day = 1;
    unsigned weekday = 1;
    unsigned hour = 1;

    friend bool operator==(const CalendarSlot&, const CalendarSlot&) = default;
};

[[nodiscard]] inline CalendarSlot make_slot(Day d, unsigned hour) {
    const std::chrono::year_month_day ymd{d};
    return CalendarSlot{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                        static_cast<unsigned>(ymd.day()), iso_weekday(d), hour};
}

[[nodiscard]] inline Day day_of(const CalendarSlot& s) { return make_day(s.year, s.month, s.day); }

/// Civil time at which the slot's hour ends (hour 24 ends at 00:00 next day).
[[nodiscard]] inline CivilTime hour_end(const CalendarSlot& s) {
    return CivilTime{day_of(s)} + std::chrono::hours{s.hour};
}

/// Slot whose hour ends at `t`; `t` must fall on a whole hour.
[[nodiscard]] inline CalendarSlot slot_ending_at(CivilTime t) {
    const auto minutes = t.time_since_epoch().count();
    if (minutes % 60 != 0) {
        throw InputError("timestamp is not on an hour boundary");
    }
    const Day d = std::chrono::floor<std::chrono::days>(t);
    const auto hour = static_cast<unsigned>((t - CivilTime{d}).count() / 60);
    if (hour == 0) {
        return make_slot(d - std::chrono::days{1}, 24);
    }
    return make_slot(d, hour);
}

namespace detail {

inline bool parse_uint(std::string_view s, std::size_t& pos, std::size_t width, int& out) {
    if (pos + width > s.size()) {
        return false;
    }
    const char* first = s.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + width, out);
    if (ec != std::errc{} || ptr != first + width) {
        return false;
    }
    pos += width;
    return true;
}

}  // namespace detail

/// Parses a civil timestamp using a strftime-like pattern made of %Y %m %d %H
/// %M and literal characters. "24:00" is accepted and rolls to the next day.
[[nodiscard]] inline CivilTime parse_civil_time(std::string_view text,
                                                std::string_view format = "%Y-%m-%d %H:%M") {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    std::size_t pos = 0;
    const auto fail = [&] {
        return InputError("unparseable timestamp '" + std::string(text) + "' for format '" +
                          std::string(format) + "'");
    };
    for (std::size_t i = 0; i < format.size(); ++i) {
        if (format[i] == '%' && i + 1 < format.size()) {
            const char spec = format[++i];
            bool ok = false;
            switch (spec) {
                case 'Y': ok = detail::parse_uint(text, pos, 4, y); break;
                case 'm': ok = detail::parse_uint(text, pos, 2, mo); break;
                case 'd': ok = detail::parse_uint(text, pos, 2, d); break;
                case 'H': ok = detail::parse_uint(text, pos, 2, h); break;
                case 'M': ok = detail::parse_uint(text, pos, 2, mi); break;
                default: throw ConfigError("unsupported timestamp directive %" + std::string(1, spec));
            }
            if (!ok) {
                throw fail();
            }
        } else {
            if (pos >= text.size() || text[pos] != format[i]) {
                throw fail();
            }
            ++pos;
        }
    }
    if (pos != text.size() || mo < 1 || mo > 12 || d < 1 || h > 24 || mi > 59 || (h == 24 && mi != 0)) {
        throw fail();
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw fail();
    }
    return CivilTime{Day{ymd}} + std::chrono::hours{h} + std::chrono::minutes{mi};
}

[[nodiscard]] inline std::string format_date(Day d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

[[nodiscard]] inline std::string format_civil_time(CivilTime t) {
    const Day d = std::chrono::floor<std::chrono::days>(t);
    const auto minutes = (t - CivilTime{d}).count();
    char buf[8];
    std::snprintf(buf, sizeof buf, " %02d:%02d", static_cast<int>(minutes / 60), static_cast<int>(minutes % 60));
    return format_date(d) + buf;
}

/// "1:00" ... "23:00", "0:00" for hour-ending labels 1..24.
[[nodiscard]] inline std::string hour_label(unsigned hour) {
    return std::to_string(hour % 24) + ":00";
}

}  // namespace loadstab
