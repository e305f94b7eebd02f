#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loadstab/loadstab.hpp"

namespace loadstab::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitThreshold = 1;
inline constexpr int kExitInput = 2;
inline constexpr const char* kVersion = "1.0.0";

/// Report number: six significant digits, NaN as null.
inline ordered_json num(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::stod(csv::sig6(v));
}

/// Collects output files and writes the run manifest.
class Run {
public:
    Run(std::string command, RunConfig config) : command_(std::move(command)), config_(std::move(config)) {
        dir_ = config_.get("output.dir", "out");
        fs::create_directories(dir_);
    }

    [[nodiscard]] const RunConfig& config() const { return config_; }

    std::ofstream open(const std::string& name) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write " + path.string());
        }
        outputs_.push_back(name);
        return out;
    }

    void write_json(const std::string& name, const ordered_json& j) { open(name) << j.dump(2) << '\n'; }

    void finish(int status) {
        ordered_json m;
        m["tool"] = "loadstab";
        m["version"] = kVersion;
        m["command"] = command_;
        m["config"] = config_.values();
        m["outputs"] = outputs_;
        m["exit_status"] = status;
        std::ofstream(dir_ / "manifest.json", std::ios::binary) << m.dump(2) << '\n';
    }

private:
    std::string command_;
    RunConfig config_;
    fs::path dir_;
    std::vector<std::string> outputs_;
};

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return in;
}

inline LoadSchema schema_from(const RunConfig& c) {
    LoadSchema s;
    s.time_column = c.get("data.time_column", s.time_column);
    s.demand_column = c.get("data.demand_column", s.demand_column);
    s.time_format = c.get("data.time_format", s.time_format);
    const auto delim = c.get("data.delimiter", ",");
    if (delim.size() != 1) {
        throw ConfigError("data.delimiter must be one character");
    }
    s.delimiter = delim[0];
    return s;
}

struct Ingested {
    HourlyLoadSeries series;
    std::vector<CleaningEntry> cleaning;
    std::vector<RowError> row_errors;
};

/// Raw load file -> cleaned hourly series.
inline Ingested ingest_raw(const RunConfig& c) {
    const auto path = c.require("data.load");
    auto in = open_input(path);
    auto parsed = parse_load_csv(in, schema_from(c));
    if (!parsed.errors.empty() && !c.get_bool("data.skip_bad_rows", false)) {
        const auto& e = parsed.errors.front();
        throw InputError(path + ":" + std::to_string(e.line) + ": " + e.message + " (" +
                         std::to_string(parsed.errors.size()) + " bad rows)");
    }
    const auto country = c.get("country", "");
    const auto format = c.get("data.format", "halfhourly");
    HourlyLoadSeries series;
    if (format == "halfhourly") {
        series = halfhourly_to_hourly(parsed.records, country);
    } else if (format == "hourly" || format == "hourly_start" || format == "hourly_end") {
        series = native_hourly(parsed.records, country, format == "hourly_end" ? HourMark::end : HourMark::start);
    } else {
        throw ConfigError("data.format must be halfhourly, hourly, hourly_start or hourly_end");
    }
    GapPolicy policy;
    policy.max_interp_len = static_cast<std::size_t>(c.get_int("cleaning.max_interp_len", 6));
    policy.max_edge_gap = static_cast<std::size_t>(c.get_int("cleaning.max_edge_gap", 24));
    auto cleaned = clean_gaps(series, policy);
    return {std::move(cleaned.series), std::move(cleaned.report), std::move(parsed.errors)};
}

/// Canonical hourly file if configured, else the raw file run through ingest.
inline HourlyLoadSeries load_series(const RunConfig& c) {
    if (const auto hourly = c.find("data.hourly")) {
        auto in = open_input(*hourly);
        return read_hourly_csv(in, c.get("country", ""));
    }
    return ingest_raw(c).series;
}

inline SeasonalityOptions seasonality_options(const RunConfig& c) {
    SeasonalityOptions o;
    const auto basis = c.get("seasonality.basis", "actual");
    if (basis == "actual") {
        o.basis = DayBasis::actual_days;
    } else if (basis == "365") {
        o.basis = DayBasis::fixed_365;
    } else {
        throw ConfigError("seasonality.basis must be actual or 365");
    }
    const auto form = c.get("seasonality.form", "verbal");
    if (form == "verbal") {
        o.form = HourlyForm::verbal;
    } else if (form == "symbolic") {
        o.form = HourlyForm::symbolic;
    } else {
        throw ConfigError("seasonality.form must be verbal or symbolic");
    }
    return o;
}

inline ordered_json years_json(YearRange y) { return ordered_json::array({y.first, y.last}); }

inline ordered_json model_json(const stats::LinearModel& m) {
    return {{"intercept", num(m.intercept)}, {"slope", num(m.slope)},
            {"se_intercept", num(m.se_intercept)}, {"se_slope", num(m.se_slope)},
            {"p_intercept", num(m.p_intercept)}, {"p_slope", num(m.p_slope)},
            {"r_squared", num(m.r_squared)}, {"n", m.n}};
}

inline ordered_json evaluation_json(const EvaluationResult& e) {
    ordered_json months = ordered_json::array();
    for (double v : e.per_month_mape) {
        months.push_back(num(v));
    }
    return {{"yearly_pct_error", num(e.yearly_pct_error)},
            {"hourly_mape", num(e.hourly_mape)},
            {"per_month_mape", months},
            {"slots", e.slots},
            {"excluded_zero_actual", e.excluded_zero}};
}

/// Window "YYYY-MM-DD:YYYY-MM-DD" as inclusive days.
inline std::pair<Day, Day> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("plot window must be FROM:TO dates");
    }
    const auto from = std::chrono::floor<std::chrono::days>(parse_civil_time(text.substr(0, colon) + " 00:00"));
    const auto to = std::chrono::floor<std::chrono::days>(parse_civil_time(text.substr(colon + 1) + " 00:00"));
    if (to < from) {
        throw ConfigError("plot window ends before it starts");
    }
    return {from, to};
}

inline int cmd_ingest(Run& run) {
    const auto& c = run.config();
    const auto r = ingest_raw(c);
    {
        auto out = run.open("hourly.csv");
        write_hourly_csv(out, r.series);
    }
    {
        auto out = run.open("cleaning.jsonl");
        write_cleaning_jsonl(out, r.cleaning);
    }
    std::map<std::string, std::size_t> actions;
    for (const auto& e : r.cleaning) {
        ++actions[std::string(to_string(e.action))];
    }
    ordered_json j;
    j["country"] = r.series.country();
    j["first_day"] = format_date(r.series.first_day());
    j["last_day"] = format_date(r.series.last_day());
    j["hours"] = r.series.size();
    j["bad_rows_skipped"] = r.row_errors.size();
    j["cleaning_entries"] = r.cleaning.size();
    j["cleaning_actions"] = actions;
    const auto full = r.series.full_years();
    if (full.count() > 0) {
        j["full_years"] = years_json(full);
        const auto annual = aggregate_annual(r.series.slice(full));
        auto out = run.open("annual.csv");
        write_annual_csv(out, annual);
    }
    run.write_json("ingest.json", j);
    return kExitOk;
}

inline int cmd_stability(Run& run) {
    const auto& c = run.config();
    const auto series = load_series(c);
    const auto years = c.get_years("years.stability").value_or(series.full_years());
    const auto options = seasonality_options(c);
    StabilityConfig sc;
    sc.epsilon_step = c.get_double("stability.epsilon_step", sc.epsilon_step);
    sc.epsilon_cap = c.get_double("stability.epsilon_cap", sc.epsilon_cap);
    sc.alpha = c.get_double("stability.alpha", sc.alpha);
    const auto variance = c.get("stability.variance", "welch");
    if (variance == "pooled") {
        sc.variance = stats::VarianceModel::pooled;
    } else if (variance != "welch") {
        throw ConfigError("stability.variance must be welch or pooled");
    }

    const auto si = compute_seasonality(series, years, options);
    const auto report = analyze_stability(si.hourly, years, sc);

    const auto table = [&](const std::string& name, const auto& write) {
        auto out = run.open(name);
        write(out);
    };
    table("si_monthly.csv", [&](auto& o) { write_monthly_si(o, si.monthly); });
    table("si_weekday.csv", [&](auto& o) { write_weekday_si(o, si.weekday); });
    table("si_hourly_mean.csv", [&](auto& o) { write_slot_table(o, si.hourly.mean_by_slot); });
    table("si_hourly_box.csv", [&](auto& o) { write_boxplot(o, si_boxplot_data(si.hourly)); });
    {
        ordered_json by_year;
        for (int y = years.first; y <= years.last; ++y) {
            ordered_json by_month;
            for (unsigned m = 1; m <= kMonthsPerYear; ++m) {
                ordered_json by_day;
                for (unsigned d = 1; d <= kDaysPerWeek; ++d) {
                    ordered_json hours = ordered_json::array();
                    for (unsigned h = 1; h <= kHoursPerDay; ++h) {
                        hours.push_back(num(si.hourly.at(y, m, d, h)));
                    }
                    by_day[std::string(kWeekdayNames[d - 1])] = hours;
                }
                by_month[std::to_string(m)] = by_day;
            }
            by_year[std::to_string(y)] = by_month;
        }
        run.write_json("si_hourly.json", by_year);
    }
    table("epsilon_hat.csv", [&](auto& o) { write_slot_table(o, report.epsilon_hat); });
    table("epsilon_mean.csv", [&](auto& o) { write_slot_table(o, report.epsilon_mean); });
    table("delta.csv", [&](auto& o) { write_aggregated_table(o, report.delta); });
    table("delta_mean.csv", [&](auto& o) { write_aggregated_table(o, report.delta_mean); });

    ordered_json j;
    j["country"] = series.country();
    j["years"] = years_json(years);
    j["pairs"] = report.pair_count;
    j["epsilon_step"] = num(sc.epsilon_step);
    j["epsilon_cap"] = num(sc.epsilon_cap);
    j["alpha"] = num(sc.alpha);
    j["variance"] = variance;
    j["delta"] = {{"overall", num(report.aggregates.overall)},
                  {"weekday", num(report.aggregates.weekday)},
                  {"weekend", num(report.aggregates.weekend)}};
    j["delta_mean_over_pairs"] = {{"overall", num(report.aggregates_mean.overall)},
                                  {"weekday", num(report.aggregates_mean.weekday)},
                                  {"weekend", num(report.aggregates_mean.weekend)}};
    j["capped_slots"] = report.capped_slots;
    j["capped_pairs"] = report.capped_pairs;
    int status = kExitOk;
    if (const auto threshold = c.find("stability.threshold")) {
        const double t = c.get_double("stability.threshold", 0.0);
        const bool stable = report.stable(t);
        j["threshold"] = num(t);
        j["stable"] = stable;
        status = stable ? kExitOk : kExitThreshold;
    }
    run.write_json("stability.json", j);
    return status;
}

inline int cmd_forecast_long(Run& run) {
    const auto& c = run.config();
    const auto series = load_series(c);
    const auto full = series.full_years();
    const int target = c.get_int("forecast.target_year", 0);
    if (target == 0) {
        throw ConfigError("missing configuration key 'forecast.target_year'");
    }
    ForecastSpec spec;
    spec.target_year = target;
    spec.baseline_year = c.get_int("forecast.baseline_year", target - 4);
    spec.gdp_report_year = c.get_int("forecast.gdp_report_year", spec.baseline_year);
    const auto source = c.get("forecast.si_source", "baseline");
    if (source == "baseline") {
        spec.si_source = SISource::baseline_year;
    } else if (source == "overall") {
        spec.si_source = SISource::overall_mean;
    } else {
        throw ConfigError("forecast.si_source must be baseline or overall");
    }
    spec.validate();

    const auto training = c.get_years("years.training").value_or(YearRange{full.first, spec.baseline_year});
    if (training.last != spec.baseline_year) {
        throw ConfigError("training window must end at the baseline year");
    }
    const auto si = compute_seasonality(series, training, seasonality_options(c));

    ordered_json j;
    j["country"] = series.country();
    j["target_year"] = spec.target_year;
    j["baseline_year"] = spec.baseline_year;
    j["gdp_report_year"] = spec.gdp_report_year;
    j["si_source"] = source;
    j["training_years"] = years_json(training);

    double annual = 0.0;
    if (c.has("forecast.annual_override")) {
        annual = c.get_double("forecast.annual_override", 0.0);
        j["annual_source"] = "override";
    } else {
        AnnualLoadSeries totals;
        if (const auto path = c.find("data.annual")) {
            auto in = open_input(*path);
            totals = read_annual_csv(in, series.country());
        } else {
            totals = aggregate_annual(series.slice(full));
        }
        if (totals.totals.empty()) {
            throw InputError("no annual totals");
        }
        const auto regression =
            c.get_years("years.regression").value_or(YearRange{totals.totals.begin()->first, spec.baseline_year});
        AnnualLoadSeries window{totals.country, {}};
        for (const auto& [y, v] : totals.totals) {
            if (y >= regression.first && y <= std::min(regression.last, spec.baseline_year)) {
                window.totals[y] = v;
            }
        }
        auto gdp_in = open_input(c.require("data.gdp"));
        const auto gdp = load_gdp_table(gdp_in, series.country());
        const auto model = fit_annual_model(window, gdp, spec.baseline_year, spec.gdp_report_year);
        annual = predict_annual(model, gdp, spec);
        j["annual_source"] = "gdp_model";
        j["model"] = model_json(model);
        j["gdp_target"] = num(gdp.value(spec.gdp_report_year, spec.target_year));
    }
    const auto forecast = c.has("forecast.annual_override")
                              ? external_annual_override(annual, si, spec, spec.target_year)
                              : disaggregate_hourly(annual, si, spec, spec.target_year);
    j["annual_forecast"] = num(forecast.annual_total);
    j["deseasonalized_base"] = num(forecast.deseasonalized_base);
    {
        auto out = run.open("forecast_hourly.csv");
        write_hourly_csv(out, forecast.values, "forecast", true);
    }

    int status = kExitOk;
    if (full.contains(spec.target_year)) {
        const auto e = evaluate_forecast(forecast.values, series);
        j["actual_total"] = num(aggregate_annual(series.slice({spec.target_year, spec.target_year})).at(spec.target_year));
        j["evaluation"] = evaluation_json(e);
        if (c.has("forecast.max_mape")) {
            status = e.hourly_mape <= c.get_double("forecast.max_mape", 0.0) ? kExitOk : kExitThreshold;
        }
    }
    if (const auto window = c.find("output.plot_window")) {
        const auto [from, to] = parse_window(*window);
        auto out = run.open("plot_long.csv");
        out << "date,hour,actual,forecast,base\n";
        for (Day d = from; d <= to; d += std::chrono::days{1}) {
            for (unsigned h = 1; h <= kHoursPerDay; ++h) {
                const auto fi = forecast.values.index_of(d, h);
                if (!fi) {
                    throw ConfigError("plot window lies outside the target year");
                }
                const auto ai = series.index_of(d, h);
                out << format_date(d) << ',' << h << ','
                    << (ai && series.has(*ai) ? csv::sig6(series[*ai]) : std::string()) << ','
                    << csv::sig6(forecast.values[*fi]) << ',' << csv::sig6(forecast.deseasonalized_base) << '\n';
            }
        }
    }
    run.write_json("forecast_long.json", j);
    return status;
}

inline int cmd_forecast_short(Run& run) {
    const auto& c = run.config();
    const auto series = load_series(c);
    const auto full = series.full_years();
    const auto window = c.get_years("years.evaluation");
    if (!window) {
        throw ConfigError("missing configuration key 'years.evaluation'");
    }
    const int warmup = c.get_int("smoothing.warmup_years", 1);
    const auto training = c.get_years("years.training").value_or(YearRange{full.first, window->first - 1});
    const auto si = compute_seasonality(series, training, seasonality_options(c));

    SmoothingConfig sc;
    sc.factors = constant_factors(si);
    sc.gamma = {c.get_double("smoothing.gamma_hour", 0.0), c.get_double("smoothing.gamma_day", 0.0),
                c.get_double("smoothing.gamma_month", 0.0)};

    ordered_json j;
    j["country"] = series.country();
    j["training_years"] = years_json(training);
    j["evaluation_years"] = years_json(*window);
    j["warmup_years"] = warmup;
    if (c.get_bool("smoothing.grid_search", false)) {
        const auto grid_window = c.get_years("years.grid").value_or(*window);
        const auto best = grid_search(series, sc, grid_window, warmup, c.get_int("smoothing.grid_steps", 100));
        sc.alpha = best.alpha;
        sc.beta = best.beta;
        j["grid"] = {{"years", years_json(grid_window)}, {"alpha", num(best.alpha)}, {"beta", num(best.beta)},
                     {"mape", num(best.mape)}};
    } else {
        sc.alpha = c.get_double("smoothing.alpha", 0.19);
        sc.beta = c.get_double("smoothing.beta", 0.88);
    }
    j["alpha"] = num(sc.alpha);
    j["beta"] = num(sc.beta);
    j["gamma"] = {num(sc.gamma[0]), num(sc.gamma[1]), num(sc.gamma[2])};

    ordered_json per_year = ordered_json::object();
    std::vector<DayError> days;
    std::vector<double> forecasts;
    for (int y = window->first; y <= window->last; ++y) {
        auto r = evaluate_day_ahead(series, sc, y, warmup);
        per_year[std::to_string(y)] = num(r.mape);
        days.insert(days.end(), r.per_day.begin(), r.per_day.end());
        forecasts.insert(forecasts.end(), r.forecasts.begin(), r.forecasts.end());
    }
    const auto whole = evaluate_day_ahead(series, sc, *window, warmup);
    j["mape_by_year"] = per_year;
    j["mape_window"] = num(whole.mape);
    {
        auto out = run.open("day_ahead_mape.csv");
        out << "date,mape\n";
        for (const auto& d : days) {
            out << format_date(d.day) << ',' << csv::sig6(d.mape) << '\n';
        }
    }
    int status = kExitOk;
    if (c.has("smoothing.max_mape")) {
        status = whole.mape <= c.get_double("smoothing.max_mape", 0.0) ? kExitOk : kExitThreshold;
    }
    if (const auto plot = c.find("output.plot_window")) {
        const auto [from, to] = parse_window(*plot);
        const Day start = make_day(window->first, 1, 1);
        auto out = run.open("plot_short.csv");
        out << "date,hour,actual,forecast\n";
        for (Day d = from; d <= to; d += std::chrono::days{1}) {
            const auto offset = (d - start).count();
            if (offset < 0 || static_cast<std::size_t>(offset + 1) * kHoursPerDay > forecasts.size()) {
                throw ConfigError("plot window lies outside the evaluation years");
            }
            for (unsigned h = 1; h <= kHoursPerDay; ++h) {
                const auto k = static_cast<std::size_t>(offset) * kHoursPerDay + (h - 1);
                out << format_date(d) << ',' << h << ',' << csv::sig6(series[*series.index_of(d, h)]) << ','
                    << csv::sig6(forecasts[k]) << '\n';
            }
        }
    }
    run.write_json("forecast_short.json", j);
    return status;
}

inline int cmd_evaluate(Run& run) {
    const auto& c = run.config();
    const auto series = load_series(c);
    auto in = open_input(c.require("evaluate.forecast"));
    const auto forecast = read_hourly_csv(in, series.country());
    const auto e = evaluate_forecast(forecast, series);
    ordered_json j;
    j["country"] = series.country();
    j["first_day"] = format_date(forecast.first_day());
    j["last_day"] = format_date(forecast.last_day());
    j["evaluation"] = evaluation_json(e);
    run.write_json("evaluation.json", j);
    if (c.has("evaluate.max_mape")) {
        return e.hourly_mape <= c.get_double("evaluate.max_mape", 0.0) ? kExitOk : kExitThreshold;
    }
    return kExitOk;
}

/// Flag -> config key bindings for one subcommand.
class Flags {
public:
    explicit Flags(CLI::App* app) : app_(app) {}

    Flags& add(const std::string& flag, const std::string& key, const std::string& help) {
        auto& slot = values_[key];
        options_.emplace_back(app_->add_option(flag, slot, help + " [" + key + "]"), key);
        return *this;
    }
    Flags& toggle(const std::string& flag, const std::string& key, const std::string& help) {
        options_.emplace_back(app_->add_flag(flag)->description(help + " [" + key + "]"), key);
        toggles_.insert(key);
        return *this;
    }

    void apply(RunConfig& c) const {
        for (const auto& [opt, key] : options_) {
            if (opt->count() == 0) {
                continue;
            }
            c.set(key, toggles_.count(key) ? "true" : values_.at(key));
        }
    }

private:
    CLI::App* app_;
    std::map<std::string, std::string> values_;
    std::vector<std::pair<CLI::Option*, std::string>> options_;
    std::set<std::string> toggles_;
};

inline void common_flags(Flags& f) {
    f.add("--country", "country", "Country identifier")
        .add("--load", "data.load", "Raw load CSV")
        .add("--format", "data.format", "halfhourly, hourly, hourly_start or hourly_end")
        .add("--hourly", "data.hourly", "Canonical hourly CSV (date,hour,demand)")
        .add("--time-column", "data.time_column", "Timestamp column of the raw file")
        .add("--demand-column", "data.demand_column", "Demand column of the raw file")
        .add("--time-format", "data.time_format", "Timestamp format, e.g. %Y-%m-%d %H:%M")
        .add("--out", "output.dir", "Output directory")
        .add("--basis", "seasonality.basis", "Monthly index day basis: actual or 365")
        .add("--form", "seasonality.form", "Hourly index form: verbal or symbolic");
}

/// Parses arguments and runs one subcommand. Returns the exit status.
inline int run(int argc, const char* const* argv, std::ostream& err = std::cerr) {
    CLI::App app{"Hourly electricity load seasonality, stability and forecasting"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("-c,--config", config_path, "Config file (default: $LOADSTAB_CONFIG)");

    struct Command {
        CLI::App* app;
        std::unique_ptr<Flags> flags;
        int (*fn)(Run&);
    };
    std::vector<Command> commands;
    const auto add = [&](const std::string& name, const std::string& help, int (*fn)(Run&)) -> Flags& {
        auto* sub = app.add_subcommand(name, help);
        commands.push_back({sub, std::make_unique<Flags>(sub), fn});
        common_flags(*commands.back().flags);
        return *commands.back().flags;
    };

    add("ingest", "Convert and clean a raw load file", cmd_ingest)
        .add("--max-interp", "cleaning.max_interp_len", "Longest gap filled by interpolation (hours)")
        .add("--max-edge-gap", "cleaning.max_edge_gap", "Longest edge gap filled (hours)");
    add("stability", "Seasonality indices and their year-to-year stability", cmd_stability)
        .add("--years", "years.stability", "Year range, e.g. 2004-2022")
        .add("--threshold", "stability.threshold", "Fail when overall delta reaches this percent")
        .add("--epsilon-step", "stability.epsilon_step", "Margin step")
        .add("--epsilon-cap", "stability.epsilon_cap", "Margin cap")
        .add("--alpha", "stability.alpha", "Significance level")
        .add("--variance", "stability.variance", "welch or pooled");
    add("forecast-long", "Annual forecast from GDP spread over the hours of a year", cmd_forecast_long)
        .add("--target-year", "forecast.target_year", "Year to forecast")
        .add("--baseline-year", "forecast.baseline_year", "Last year of data used (default target - 4)")
        .add("--gdp-report-year", "forecast.gdp_report_year", "GDP vintage (default baseline year)")
        .add("--gdp", "data.gdp", "GDP vintage CSV")
        .add("--annual", "data.annual", "Annual totals CSV (year,total)")
        .add("--annual-override", "forecast.annual_override", "Use this annual total instead of the model")
        .add("--si-source", "forecast.si_source", "baseline or overall")
        .add("--training", "years.training", "Seasonality year range ending at the baseline year")
        .add("--regression", "years.regression", "Annual regression years (default: all through the baseline)")
        .add("--plot-window", "output.plot_window", "Emit plot data for FROM:TO dates")
        .add("--max-mape", "forecast.max_mape", "Fail when hourly MAPE exceeds this percent");
    add("forecast-short", "Day-ahead exponential smoothing with constant seasonality", cmd_forecast_short)
        .add("--year", "years.evaluation", "Evaluation year or range")
        .add("--alpha", "smoothing.alpha", "Level smoothing")
        .add("--beta", "smoothing.beta", "Trend smoothing")
        .toggle("--grid-search", "smoothing.grid_search", "Search alpha and beta on a 0.01 grid")
        .add("--grid-years", "years.grid", "Objective window of the grid search")
        .add("--grid-steps", "smoothing.grid_steps", "Grid resolution (steps per unit)")
        .add("--warmup", "smoothing.warmup_years", "Warm-up years before each evaluation year")
        .add("--training", "years.training", "Years for the constant seasonal factors")
        .add("--plot-window", "output.plot_window", "Emit plot data for FROM:TO dates")
        .add("--max-mape", "smoothing.max_mape", "Fail when MAPE exceeds this percent");
    add("evaluate", "Score an hourly forecast file against actuals", cmd_evaluate)
        .add("--forecast", "evaluate.forecast", "Forecast CSV (date,hour,value)")
        .add("--max-mape", "evaluate.max_mape", "Fail when hourly MAPE exceeds this percent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    for (auto& cmd : commands) {
        if (!cmd.app->parsed()) {
            continue;
        }
        try {
            auto config = RunConfig::load_default(config_path);
            cmd.flags->apply(config);
            Run r(cmd.app->get_name(), config);
            const int status = cmd.fn(r);
            r.finish(status);
            return status;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitInput;
        }
    }
    return kExitInput;
}

}  // namespace loadstab::cli
