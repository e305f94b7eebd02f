// End-to-end walk through the library on synthetic data: seasonality indices,
// stability, a GDP-driven annual forecast spread over hours, and day-ahead
// smoothing.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "loadstab/loadstab.hpp"

using namespace loadstab;

namespace {

/// Demand with daily, weekly and yearly cycles, a slow trend and noise.
HourlyLoadSeries synthetic_load(YearRange years, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.02);
    const Day first = make_day(years.first, 1, 1);
    const auto days = static_cast<std::size_t>((make_day(years.last, 12, 31) - first).count() + 1);
    HourlyLoadSeries s("DEMO", UnitConvention::native_hourly, first, days);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto slot = s.slot(i);
        const double day_cycle = 1.0 + 0.18 * std::sin((slot.hour - 8.0) * M_PI / 12.0);
        const double week_cycle = slot.weekday >= 6 ? 0.88 : 1.0;
        const double year_cycle = 1.0 + 0.06 * std::cos((slot.month - 7.0) * M_PI / 6.0);
        const double growth = 1.0 + 0.02 * (slot.year - years.first);
        s.set(i, 5000.0 * growth * day_cycle * week_cycle * year_cycle * (1.0 + noise(rng)));
    }
    return s;
}

GdpTable synthetic_gdp(int report, YearRange years) {
    std::ostringstream csv;
    csv << "report_year,target_year,gdp\n";
    for (int y = years.first; y <= years.last; ++y) {
        csv << report << ',' << y << ',' << 300.0 * std::pow(1.025, y - years.first) << '\n';
    }
    std::istringstream in(csv.str());
    return load_gdp_table(in, "DEMO");
}

}  // namespace

int main() {
    const YearRange all{2012, 2021};
    const auto series = synthetic_load(all, 7);
    std::cout << std::fixed << std::setprecision(3);

    const YearRange training{2012, 2017};
    const auto si = compute_seasonality(series, training);
    std::cout << "mean hourly SI, Monday 1:00 " << si.hourly.mean_by_slot[0][0] << ", Sunday 13:00 "
              << si.hourly.mean_by_slot[6][12] << "\n";

    const auto stability = analyze_stability(si.hourly, training);
    std::cout << "stability delta: overall " << stability.aggregates.overall << "%, weekday "
              << stability.aggregates.weekday << "%, weekend " << stability.aggregates.weekend << "%\n";

    const auto gdp = synthetic_gdp(2017, all);
    const auto model = fit_annual_model(aggregate_annual(series.slice(training)), gdp, 2017);
    std::cout << std::setprecision(4) << "annual model: load = " << model.intercept << " + " << model.slope
              << " * gdp, R2 " << model.r_squared << "\n";

    const auto spec = ForecastSpec::five_year_ahead(2021);
    const auto forecast = disaggregate_hourly(predict_annual(model, gdp, spec), si, spec, 2021);
    const auto eval = evaluate_forecast(forecast.values, series);
    std::cout << std::setprecision(2) << "2021 forecast from 2017: yearly error " << eval.yearly_pct_error
              << "%, hourly MAPE " << eval.hourly_mape << "%\n";

    SmoothingConfig smoothing;
    smoothing.factors = constant_factors(si);
    const auto best = grid_search(series, smoothing, {2019, 2019}, 1, 20);
    smoothing.alpha = best.alpha;
    smoothing.beta = best.beta;
    const auto day_ahead = evaluate_day_ahead(series, smoothing, {2020, 2021});
    std::cout << "day-ahead smoothing alpha " << best.alpha << ", beta " << best.beta << ": MAPE 2020-2021 "
              << day_ahead.mape << "%\n";
    return 0;
}
