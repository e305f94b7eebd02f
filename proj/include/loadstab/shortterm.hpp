#pragma once

// Holt-Winters smoothing with level, trend and three multiplicative seasonal
// factors (hour of week, weekday, month). With gamma = 0 the factors stay at
// their initial values.
//
//   L_t = alpha * D_t / S_t + (1 - alpha) * (L_{t-1} + B_{t-1})
//   B_t = beta * (L_t - L_{t-1}) + (1 - beta) * B_{t-1}
//   F_{t+k} = (L_t + k * B_t) * S_{t+k}

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "loadstab/calendar.hpp"
#include "loadstab/error.hpp"
#include "loadstab/seasonality.hpp"
#include "loadstab/series.hpp"

namespace loadstab {

/// Seasonal factors looked up by calendar slot.
struct SeasonalFactors {
    SlotTable hour{};  ///< [weekday - 1][hour - 1]
    std::array<double, kDaysPerWeek> weekday{};
    std::array<double, kMonthsPerYear> month{};

    [[nodiscard]] double at(const CalendarSlot& s) const {
        return hour[s.weekday - 1][s.hour - 1] * weekday[s.weekday - 1] * month[s.month - 1];
    }

    static SeasonalFactors unit() {
        SeasonalFactors f;
        for (auto& row : f.hour) {
            row.fill(1.0);
        }
        f.weekday.fill(1.0);
        f.month.fill(1.0);
        return f;
    }

    void validate() const {
        const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        for (const auto& row : hour) {
            for (double v : row) {
                if (!positive(v)) {
                    throw ConfigError("seasonal factors must be positive");
                }
            }
        }
        for (double v : weekday) {
            if (!positive(v)) {
                throw ConfigError("seasonal factors must be positive");
            }
        }
        for (double v : month) {
            if (!positive(v)) {
                throw ConfigError("seasonal factors must be positive");
            }
        }
    }
};

/// Constant factors from training indices: each weekday's 24 mean SI3 values,
/// the overall weekday SI2 and the overall month SI1, each family scaled to mean 1.
[[nodiscard]] inline SeasonalFactors constant_factors(const SeasonalityIndexSet& si) {
    SeasonalFactors f;
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        const auto& mu = si.hourly.mean_by_slot[d];
        const double mean = std::accumulate(mu.begin(), mu.end(), 0.0) / kHoursPerDay;
        for (unsigned h = 0; h < kHoursPerDay; ++h) {
            f.hour[d][h] = mu[h] / mean;
        }
    }
    const double wd = std::accumulate(si.weekday.overall.begin(), si.weekday.overall.end(), 0.0) / kDaysPerWeek;
    for (unsigned d = 0; d < kDaysPerWeek; ++d) {
        f.weekday[d] = si.weekday.overall[d] / wd;
    }
    const double mm = std::accumulate(si.monthly.overall.begin(), si.monthly.overall.end(), 0.0) / kMonthsPerYear;
    for (unsigned m = 0; m < kMonthsPerYear; ++m) {
        f.month[m] = si.monthly.overall[m] / mm;
    }
    f.validate();
    return f;
}

struct SmoothingConfig {
    double alpha = 0.0;
    double beta = 0.0;
    std::array<double, 3> gamma{};  ///< hour, weekday, month
    SeasonalFactors factors = SeasonalFactors::unit();

    void validate() const {
        const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!unit(alpha) || !unit(beta) || !unit(gamma[0]) || !unit(gamma[1]) || !unit(gamma[2])) {
            throw ConfigError("smoothing parameters must lie in [0, 1]");
        }
        factors.validate();
    }
    [[nodiscard]] bool constant_seasonality() const {
        return gamma[0] == 0.0 && gamma[1] == 0.0 && gamma[2] == 0.0;
    }
};

struct SmoothingState {
    double level = 0.0;
    double trend = 0.0;
    Day origin{};           ///< day of clock 0, hour 1
    std::size_t clock = 0;  ///< index of the next observation
    SeasonalFactors factors;

    [[nodiscard]] CalendarSlot slot(std::size_t t) const {
        return make_slot(origin + std::chrono::days{t / kHoursPerDay},
                         static_cast<unsigned>(t % kHoursPerDay + 1));
    }
};

/// State after the first observation (at hour 1 of `origin`): L = D / S, B = 0.
[[nodiscard]] inline SmoothingState init_state(const SmoothingConfig& config, Day origin, double first) {
    config.validate();
    if (!(first > 0.0)) {
        throw DomainError("multiplicative smoothing needs positive demand");
    }
    SmoothingState s{0.0, 0.0, origin, 0, config.factors};
    s.level = first / s.factors.at(s.slot(0));
    s.clock = 1;
    return s;
}

struct StepResult {
    SmoothingState state;
    double forecast = 0.0;  ///< one step ahead of the new state
};

[[nodiscard]] inline StepResult es_step(SmoothingState state, double observation, const SmoothingConfig& config) {
    if (!(observation > 0.0)) {
        throw DomainError("multiplicative smoothing needs positive demand");
    }
    const auto slot = state.slot(state.clock);
    const double season = state.factors.at(slot);
    const double prev = state.level;
    state.level = config.alpha * observation / season + (1.0 - config.alpha) * (prev + state.trend);
    state.trend = config.beta * (state.level - prev) + (1.0 - config.beta) * state.trend;
    if (!config.constant_seasonality()) {
        auto& fh = state.factors.hour[slot.weekday - 1][slot.hour - 1];
        auto& fd = state.factors.weekday[slot.weekday - 1];
        auto& fm = state.factors.month[slot.month - 1];
        const double ratio = observation / state.level;
        const double h = fh, d = fd, m = fm;
        fh = config.gamma[0] * ratio / (d * m) + (1.0 - config.gamma[0]) * h;
        fd = config.gamma[1] * ratio / (h * m) + (1.0 - config.gamma[1]) * d;
        fm = config.gamma[2] * ratio / (h * d) + (1.0 - config.gamma[2]) * m;
    }
    ++state.clock;
    const double next = (state.level + state.trend) * state.factors.at(state.slot(state.clock));
    return {std::move(state), next};
}

/// Forecasts for the next k hours from the last assimilated observation.
[[nodiscard]] inline std::vector<double> forecast_horizon(const SmoothingState& state, std::size_t k) {
    if (k == 0) {
        throw DomainError("forecast horizon must be at least one step");
    }
    std::vector<double> out(k);
    for (std::size_t j = 1; j <= k; ++j) {
        out[j - 1] = (state.level + static_cast<double>(j) * state.trend) *
                     state.factors.at(state.slot(state.clock - 1 + j));
    }
    return out;
}

struct DayError {
    Day day{};
    double mape = 0.0;
};

struct DayAheadResult {
    YearRange years;
    double mape = 0.0;
    std::vector<DayError> per_day;
    std::vector<double> forecasts;  ///< one per hour of the window
};

namespace detail {

/// Actuals and seasonal products from the warm-up start through the window end.
struct DayAheadInput {
    std::vector<double> demand;
    std::vector<double> season;
    std::size_t eval_start = 0;
    Day origin{};
};

inline DayAheadInput day_ahead_input(const HourlyLoadSeries& series, const SeasonalFactors& factors,
                                     YearRange window, int warmup_years) {
    if (window.count() == 0) {
        throw InputError("empty evaluation window");
    }
    if (warmup_years < 1) {
        throw ConfigError("day-ahead evaluation needs at least one warm-up year");
    }
    const YearRange all{window.first - warmup_years, window.last};
    series.require_complete(all);
    DayAheadInput in;
    in.origin = make_day(all.first, 1, 1);
    const auto begin = *series.index_of(in.origin, 1);
    const auto end = *series.index_of(make_day(all.last, 12, 31), 24) + 1;
    in.eval_start = *series.index_of(make_day(window.first, 1, 1), 1) - begin;
    in.demand.assign(series.values().begin() + static_cast<std::ptrdiff_t>(begin),
                     series.values().begin() + static_cast<std::ptrdiff_t>(end));
    in.season.resize(in.demand.size());
    for (std::size_t t = 0; t < in.demand.size(); ++t) {
        if (!(in.demand[t] > 0.0)) {
            throw DomainError("multiplicative smoothing needs positive demand");
        }
        in.season[t] = factors.at(make_slot(in.origin + std::chrono::days{t / kHoursPerDay},
                                            static_cast<unsigned>(t % kHoursPerDay + 1)));
    }
    return in;
}

/// Constant-seasonality day-ahead run; returns the sum of absolute percentage
/// errors, optionally per day.
inline double day_ahead_kernel(const DayAheadInput& in, double alpha, double beta, std::vector<double>* per_day,
                               std::vector<double>* forecasts = nullptr) {
    const double* d = in.demand.data();
    const double* s = in.season.data();
    double level = d[0] / s[0];
    double trend = 0.0;
    const auto assimilate = [&](std::size_t t) {
        const double prev = level;
        level = alpha * d[t] / s[t] + (1.0 - alpha) * (prev + trend);
        trend = beta * (level - prev) + (1.0 - beta) * trend;
    };
    for (std::size_t t = 1; t < in.eval_start; ++t) {
        assimilate(t);
    }
    double total = 0.0;
    for (std::size_t day = in.eval_start; day < in.demand.size(); day += kHoursPerDay) {
        double sum = 0.0;
        for (std::size_t j = 0; j < kHoursPerDay; ++j) {
            const double f = (level + static_cast<double>(j + 1) * trend) * s[day + j];
            sum += std::abs(d[day + j] - f) / d[day + j];
            if (forecasts) {
                forecasts->push_back(f);
            }
        }
        for (std::size_t j = 0; j < kHoursPerDay; ++j) {
            assimilate(day + j);
        }
        if (per_day) {
            per_day->push_back(sum / kHoursPerDay * 100.0);
        }
        total += sum;
    }
    return total;
}

}  // namespace detail

/// Rolling day-ahead evaluation: at each midnight of the window forecast the
/// next 24 hours, then assimilate them. The preceding `warmup_years` only
/// train the state.
[[nodiscard]] inline DayAheadResult evaluate_day_ahead(const HourlyLoadSeries& series, const SmoothingConfig& config,
                                                       YearRange window, int warmup_years = 1) {
    config.validate();
    const auto in = detail::day_ahead_input(series, config.factors, window, warmup_years);
    DayAheadResult r;
    r.years = window;
    std::vector<double> per_day;
    double total = 0.0;
    if (config.constant_seasonality()) {
        total = detail::day_ahead_kernel(in, config.alpha, config.beta, &per_day, &r.forecasts);
    } else {
        auto state = init_state(config, in.origin, in.demand[0]);
        for (std::size_t t = 1; t < in.eval_start; ++t) {
            state = es_step(std::move(state), in.demand[t], config).state;
        }
        for (std::size_t day = in.eval_start; day < in.demand.size(); day += kHoursPerDay) {
            const auto f = forecast_horizon(state, kHoursPerDay);
            double sum = 0.0;
            for (std::size_t j = 0; j < kHoursPerDay; ++j) {
                sum += std::abs(in.demand[day + j] - f[j]) / in.demand[day + j];
                r.forecasts.push_back(f[j]);
                state = es_step(std::move(state), in.demand[day + j], config).state;
            }
            per_day.push_back(sum / kHoursPerDay * 100.0);
            total += sum;
        }
    }
    const std::size_t hours = in.demand.size() - in.eval_start;
    r.mape = total / static_cast<double>(hours) * 100.0;
    r.per_day.reserve(per_day.size());
    for (std::size_t i = 0; i < per_day.size(); ++i) {
        r.per_day.push_back({in.origin + std::chrono::days{(in.eval_start / kHoursPerDay) + i}, per_day[i]});
    }
    return r;
}

[[nodiscard]] inline DayAheadResult evaluate_day_ahead(const HourlyLoadSeries& series, const SmoothingConfig& config,
                                                       int year, int warmup_years = 1) {
    return evaluate_day_ahead(series, config, YearRange{year, year}, warmup_years);
}

struct GridResult {
    double alpha = 0.0;
    double beta = 0.0;
    double mape = 0.0;
};

/// Exhaustive search of alpha, beta over {0, 1/steps, ..., 1} minimizing the
/// day-ahead MAPE over `window`. Ties keep the smaller alpha, then beta.
/// Seasonal factors and gamma come from `base`.
[[nodiscard]] inline GridResult grid_search(const HourlyLoadSeries& series, const SmoothingConfig& base,
                                            YearRange window, int warmup_years = 1, int steps = 100) {
    base.validate();
    if (steps < 1) {
        throw ConfigError("grid needs at least one step");
    }
    GridResult best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    if (!base.constant_seasonality()) {
        for (int i = 0; i <= steps; ++i) {
            for (int j = 0; j <= steps; ++j) {
                SmoothingConfig c = base;
                c.alpha = static_cast<double>(i) / steps;
                c.beta = static_cast<double>(j) / steps;
                const double m = evaluate_day_ahead(series, c, window, warmup_years).mape;
                if (m < best.mape) {
                    best = {c.alpha, c.beta, m};
                }
            }
        }
        return best;
    }
    const auto in = detail::day_ahead_input(series, base.factors, window, warmup_years);
    const double hours = static_cast<double>(in.demand.size() - in.eval_start);
    for (int i = 0; i <= steps; ++i) {
        const double a = static_cast<double>(i) / steps;
        for (int j = 0; j <= steps; ++j) {
            const double b = static_cast<double>(j) / steps;
            const double m = detail::day_ahead_kernel(in, a, b, nullptr) / hours * 100.0;
            if (m < best.mape) {
                best = {a, b, m};
            }
        }
    }
    return best;
}

}  // namespace loadstab
