#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

using namespace loadstab;
using namespace loadstab::synth;
using nlohmann::json;

namespace {

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST(RunConfig, SectionsCommentsAndTypes) {
    std::istringstream in(
        "# comment\n"
        "country = SG\n"
        "[data]\n"
        "; another comment\n"
        "load = /tmp/x.csv   \n"
        "[smoothing]\n"
        "alpha = 0.19\n"
        "grid_search = yes\n"
        "[years]\n"
        "training = 2004-2013\n"
        "evaluation = 2018\n");
    const auto c = RunConfig::parse(in);
    EXPECT_EQ(c.get("country", ""), "SG");
    EXPECT_EQ(c.require("data.load"), "/tmp/x.csv");
    EXPECT_DOUBLE_EQ(c.get_double("smoothing.alpha", 0.0), 0.19);
    EXPECT_TRUE(c.get_bool("smoothing.grid_search", false));
    EXPECT_EQ(c.get_years("years.training")->first, 2004);
    EXPECT_EQ(c.get_years("years.training")->last, 2013);
    EXPECT_EQ(c.get_years("years.evaluation")->count(), 1);
    EXPECT_THROW((void)c.require("data.gdp"), ConfigError);
    EXPECT_THROW((void)c.get_int("country", 0), ConfigError);
}

TEST(RunConfig, BadLinesRejected) {
    std::istringstream in("[data\nx = 1\n");
    EXPECT_THROW((void)RunConfig::parse(in), ConfigError);
    std::istringstream no_eq("just words\n");
    EXPECT_THROW((void)RunConfig::parse(no_eq), ConfigError);
}

TEST(Cli, IngestHappyPath) {
    const auto dir = scratch_dir("cli_ingest");
    const auto hourly = planted_series({2019, 2019}, random_pattern(1), 2);
    write_halfhourly_csv(dir / "raw.csv", hourly);
    const int status = run_cli({"ingest", "--load", (dir / "raw.csv").string(), "--country", "SG", "--out",
                                (dir / "out").string()});
    ASSERT_EQ(status, 0);
    const auto back_text = slurp(dir / "out" / "hourly.csv");
    std::istringstream back_in(back_text);
    const auto back = read_hourly_csv(back_in, "SG");
    ASSERT_EQ(back.size(), hourly.size());
    for (std::size_t i = 0; i < back.size(); i += 111) {
        EXPECT_NEAR(back[i], hourly[i], 1e-9 * hourly[i]);
    }
    EXPECT_EQ(slurp(dir / "out" / "cleaning.jsonl"), "");
    const auto j = read_json(dir / "out" / "ingest.json");
    EXPECT_EQ(j["hours"], 8760);
    EXPECT_EQ(j["full_years"], json::array({2019, 2019}));
    const auto m = read_json(dir / "out" / "manifest.json");
    EXPECT_EQ(m["exit_status"], 0);
    EXPECT_EQ(m["command"], "ingest");
}

TEST(Cli, PlantedGapGivesOneCleaningEntry) {
    const auto dir = scratch_dir("cli_gap");
    const auto hourly = planted_series({2019, 2019}, random_pattern(3), 4);
    write_halfhourly_csv(dir / "raw.csv", hourly, {2 * 1000 + 1});
    ASSERT_EQ(run_cli({"ingest", "--load", (dir / "raw.csv").string(), "--out", (dir / "out").string()}), 0);
    const auto report = slurp(dir / "out" / "cleaning.jsonl");
    ASSERT_EQ(line_count(report), 1u);
    const auto entry = json::parse(report);
    EXPECT_EQ(entry["action"], "interpolated");
    EXPECT_NEAR(entry["replacement"].get<double>(), 0.5 * (hourly[999] + hourly[1001]), 1e-5 * hourly[999]);
}

TEST(Cli, MissingFileExitsTwoWithPath) {
    const auto dir = scratch_dir("cli_missing");
    std::string err;
    const auto path = (dir / "nope.csv").string();
    EXPECT_EQ(run_cli({"ingest", "--load", path, "--out", (dir / "out").string()}, &err), 2);
    EXPECT_NE(err.find(path), std::string::npos);
}

TEST(Cli, UnknownSubcommandOrFlag) {
    EXPECT_EQ(run_cli({"bogus"}), 2);
    EXPECT_EQ(run_cli({"ingest", "--no-such-flag"}), 2);
}

TEST(Cli, ConfigFileDrivesCommand) {
    const auto dir = scratch_dir("cli_config");
    write_halfhourly_csv(dir / "raw.csv", constant_series({2019, 2019}, 800.0));
    {
        std::ofstream cfg(dir / "run.ini");
        cfg << "country = T\n[data]\nload = " << (dir / "raw.csv").string() << "\n[output]\ndir = "
            << (dir / "out").string() << "\n";
    }
    EXPECT_EQ(run_cli({"-c", (dir / "run.ini").string(), "ingest"}), 0);
    EXPECT_EQ(read_json(dir / "out" / "ingest.json")["country"], "T");
}

TEST(Cli, StabilityConstantDataIsStable) {
    const auto dir = scratch_dir("cli_stab_const");
    {
        std::ofstream out(dir / "hourly.csv");
        write_hourly_csv(out, constant_series({2019, 2021}, 900.0));
    }
    ASSERT_EQ(run_cli({"stability", "--hourly", (dir / "hourly.csv").string(), "--threshold", "0.001", "--out",
                       (dir / "out").string()}),
              0);
    const auto j = read_json(dir / "out" / "stability.json");
    EXPECT_EQ(j["delta"]["overall"], 0.0);
    EXPECT_EQ(j["stable"], true);
    const auto delta = slurp(dir / "out" / "delta.csv");
    EXPECT_EQ(line_count(delta), 26u);  // header, 24 hours, overall
}

TEST(Cli, StabilityThresholdExceededExitsOne) {
    const auto dir = scratch_dir("cli_stab_noisy");
    {
        std::ofstream out(dir / "hourly.csv");
        write_hourly_csv(out, planted_series({2019, 2020}, random_pattern(5, 0.05), 6));
    }
    EXPECT_EQ(run_cli({"stability", "--hourly", (dir / "hourly.csv").string(), "--threshold", "0.5", "--out",
                       (dir / "out").string()}),
              1);
    EXPECT_EQ(read_json(dir / "out" / "manifest.json")["exit_status"], 1);
    EXPECT_EQ(run_cli({"stability", "--hourly", (dir / "hourly.csv").string(), "--years", "2019", "--out",
                       (dir / "out2").string()}),
              2);
}

TEST(Cli, ForecastShortFrozenOnConstantData) {
    const auto dir = scratch_dir("cli_short");
    {
        std::ofstream out(dir / "hourly.csv");
        write_hourly_csv(out, constant_series({2018, 2020}, 640.0));
    }
    ASSERT_EQ(run_cli({"forecast-short", "--hourly", (dir / "hourly.csv").string(), "--year", "2020", "--alpha",
                       "0", "--beta", "0", "--training", "2018-2019", "--out", (dir / "out").string()}),
              0);
    const auto j = read_json(dir / "out" / "forecast_short.json");
    EXPECT_EQ(j["mape_window"], 0.0);
    EXPECT_EQ(line_count(slurp(dir / "out" / "day_ahead_mape.csv")), 367u);
}

TEST(Cli, ForecastLongAndEvaluate) {
    const auto dir = scratch_dir("cli_long");
    const auto hourly = planted_series({2015, 2019}, random_pattern(7), 8);
    {
        std::ofstream out(dir / "hourly.csv");
        write_hourly_csv(out, hourly);
    }
    write_gdp_csv(dir / "gdp.csv", 2015, 2010, 2019);
    {
        std::ofstream out(dir / "annual.csv");
        out << "year,total\n";
        for (int y = 2010; y <= 2015; ++y) {
            out << y << ',' << 4e7 + 1e5 * (200 + 15 * (y - 2010)) << '\n';
        }
    }
    ASSERT_EQ(run_cli({"forecast-long", "--hourly", (dir / "hourly.csv").string(), "--target-year", "2019",
                       "--gdp", (dir / "gdp.csv").string(), "--annual", (dir / "annual.csv").string(), "--training",
                       "2015-2015", "--plot-window", "2019-03-04:2019-03-10", "--out", (dir / "out").string()}),
              0);
    const auto j = read_json(dir / "out" / "forecast_long.json");
    EXPECT_NEAR(j["annual_forecast"].get<double>(), 4e7 + 1e5 * 335, 1e-5 * 4e7);
    EXPECT_NEAR(j["model"]["slope"].get<double>(), 1e5, 1.0);
    EXPECT_TRUE(j.contains("evaluation"));
    EXPECT_EQ(line_count(slurp(dir / "out" / "plot_long.csv")), 1u + 7u * 24u);

    ASSERT_EQ(run_cli({"evaluate", "--hourly", (dir / "hourly.csv").string(), "--forecast",
                       (dir / "out" / "forecast_hourly.csv").string(), "--out", (dir / "eval").string()}),
              0);
    const auto e = read_json(dir / "eval" / "evaluation.json");
    EXPECT_NEAR(e["evaluation"]["hourly_mape"].get<double>(), j["evaluation"]["hourly_mape"].get<double>(), 1e-3);
    EXPECT_EQ(run_cli({"evaluate", "--hourly", (dir / "hourly.csv").string(), "--forecast",
                       (dir / "out" / "forecast_hourly.csv").string(), "--max-mape", "0.0001", "--out",
                       (dir / "eval2").string()}),
              1);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const auto dir = scratch_dir("cli_repeat");
    {
        std::ofstream out(dir / "hourly.csv");
        write_hourly_csv(out, planted_series({2019, 2020}, random_pattern(9), 10));
    }
    for (const auto* sub : {"a", "b"}) {
        ASSERT_EQ(run_cli({"stability", "--hourly", (dir / "hourly.csv").string(), "--out", (dir / sub).string()}),
                  0);
    }
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const auto name = entry.path().filename();
        if (name == "manifest.json") {
            continue;
        }
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / name)) << name;
    }
}
