#include <gtest/gtest.h>

#include "loadstab/loadstab.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace loadstab;

namespace {

struct Fixture {
    HourlyLoadSeries series;
    YearRange years;
};

const Fixture& planted() {
    static const Fixture f{synth::planted_series({2019, 2021}, synth::random_pattern(42), 43), {2019, 2021}};
    return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(MonthlySI, ConstantYearIsOne) {
    const auto s = synth::constant_series({2019, 2019}, 1000.0);
    const auto t = compute_monthly_si(s, {2019, 2019});
    for (unsigned m = 1; m <= 12; ++m) {
        EXPECT_NEAR(t.at(2019, m), 1.0, 1e-12);
    }
}

TEST(MonthlySI, FixedBasisInLeapYear) {
    const auto s = synth::constant_series({2020, 2020}, 10.0);
    const auto t = compute_monthly_si(s, {2020, 2020}, DayBasis::fixed_365);
    EXPECT_NEAR(t.at(2020, 1), 365.0 / 366.0, 1e-12);
}

TEST(MonthlySI, DoubledJanuary) {
    auto s = synth::constant_series({2019, 2019}, 100.0);
    for (std::size_t i = 0; i < 31 * 24; ++i) {
        s.set(i, 200.0);
    }
    const auto t = compute_monthly_si(s, {2019, 2019});
    EXPECT_NEAR(t.at(2019, 1), 2.0 * 365.0 / 396.0, 1e-12);
    EXPECT_NEAR(t.at(2019, 2), 365.0 / 396.0, 1e-12);
}

TEST(MonthlySI, DayWeightedSumIsDaysInYear) {
    const auto& f = planted();
    const auto t = compute_monthly_si(f.series, f.years);
    for (int y = f.years.first; y <= f.years.last; ++y) {
        double sum = 0.0;
        for (unsigned m = 1; m <= 12; ++m) {
            sum += days_in_month(y, m) * t.at(y, m);
        }
        EXPECT_NEAR(sum, days_in_year(y), 1e-9);
    }
}

TEST(MonthlySI, MatchesOracle) {
    const auto& f = planted();
    for (const bool basis365 : {false, true}) {
        const auto t = compute_monthly_si(f.series, f.years, basis365 ? DayBasis::fixed_365 : DayBasis::actual_days);
        const auto o = oracle::si1(f.series, f.years, basis365);
        for (int y = f.years.first; y <= f.years.last; ++y) {
            for (unsigned m = 1; m <= 12; ++m) {
                EXPECT_LT(rel(t.at(y, m), o[y - f.years.first][m - 1]), 1e-9);
            }
        }
    }
}

TEST(WeekdaySI, MatchesOracleAndWeightedIdentity) {
    const auto& f = planted();
    const auto monthly = compute_monthly_si(f.series, f.years);
    const auto weekday = compute_weekday_si(f.series, monthly);
    const auto o = oracle::si2(f.series, f.years, oracle::mean_over_years(oracle::si1(f.series, f.years, false)));
    for (int y = f.years.first; y <= f.years.last; ++y) {
        for (unsigned m = 1; m <= 12; ++m) {
            double weighted = 0.0;
            for (unsigned d = 1; d <= 7; ++d) {
                EXPECT_LT(rel(weekday.at(y, m, d), o[y - f.years.first][m - 1][d - 1]), 1e-9);
                weighted += oracle::weekday_count(y, m, d) * weekday.at(y, m, d);
            }
            EXPECT_NEAR(weighted, days_in_month(y, m) / monthly.overall_at(m), 1e-9);
        }
    }
}

TEST(HourlySI, MatchesOracleBothForms) {
    const auto& f = planted();
    for (const auto form : {HourlyForm::verbal, HourlyForm::symbolic}) {
        const auto set = compute_seasonality(f.series, f.years, {DayBasis::actual_days, form});
        const auto si1bar = oracle::mean_over_years(oracle::si1(f.series, f.years, false));
        std::array<double, 7> si2bar{};
        const auto o2 = oracle::si2(f.series, f.years, si1bar);
        for (const auto& year : o2) {
            for (const auto& month : year) {
                for (int d = 0; d < 7; ++d) {
                    si2bar[d] += month[d] / (12.0 * f.years.count());
                }
            }
        }
        const auto o3 = oracle::si3(f.series, f.years, si1bar, si2bar, form == HourlyForm::verbal);
        for (int y = f.years.first; y <= f.years.last; ++y) {
            for (unsigned m = 1; m <= 12; ++m) {
                for (unsigned d = 1; d <= 7; ++d) {
                    for (unsigned h = 1; h <= 24; ++h) {
                        ASSERT_LT(rel(set.hourly.at(y, m, d, h), o3[y - f.years.first][m - 1][d - 1][h - 1]), 1e-9);
                    }
                }
            }
        }
    }
}

TEST(HourlySI, VerbalHourSumIdentity) {
    const auto& f = planted();
    const auto set = compute_seasonality(f.series, f.years);
    for (unsigned m = 1; m <= 12; ++m) {
        for (unsigned d = 1; d <= 7; ++d) {
            double sum = 0.0;
            for (unsigned h = 1; h <= 24; ++h) {
                sum += set.hourly.at(2020, m, d, h);
            }
            EXPECT_NEAR(sum, 24.0 / (set.monthly.overall_at(m) * set.weekday.overall_at(d)), 1e-9);
        }
    }
}

TEST(HourlySI, ConstantSeriesAllOnes) {
    const auto s = synth::constant_series({2019, 2020}, 3.0);
    const auto set = compute_seasonality(s, {2019, 2020});
    for (unsigned d = 1; d <= 7; ++d) {
        for (unsigned h = 1; h <= 24; ++h) {
            EXPECT_NEAR(set.hourly.mean_by_slot[d - 1][h - 1], 1.0, 1e-12);
            EXPECT_NEAR(set.hourly.at(2020, 2, d, h), 1.0, 1e-12);
        }
        EXPECT_NEAR(set.weekday.overall_at(d), 1.0, 1e-12);
    }
}

TEST(HourlySI, ScaleInvariant) {
    const auto& f = planted();
    std::vector<double> scaled(f.series.values().begin(), f.series.values().end());
    for (auto& v : scaled) {
        v *= 7.3;
    }
    const auto s2 = HourlyLoadSeries::from_values("X", UnitConvention::summed_half_hours, f.series.first_day(), scaled);
    const auto a = compute_seasonality(f.series, f.years);
    const auto b = compute_seasonality(s2, f.years);
    for (int y = f.years.first; y <= f.years.last; ++y) {
        for (unsigned m = 1; m <= 12; ++m) {
            EXPECT_NEAR(a.monthly.at(y, m), b.monthly.at(y, m), 1e-12);
            for (unsigned d = 1; d <= 7; ++d) {
                EXPECT_NEAR(a.weekday.at(y, m, d), b.weekday.at(y, m, d), 1e-12);
                for (unsigned h = 1; h <= 24; ++h) {
                    ASSERT_NEAR(a.hourly.at(y, m, d, h), b.hourly.at(y, m, d, h), 1e-12);
                }
            }
        }
    }
}

TEST(Seasonality, IncompleteYearRejected) {
    auto s = synth::constant_series({2019, 2019}, 1.0);
    s.clear(10);
    EXPECT_THROW((void)compute_monthly_si(s, {2019, 2019}), InputError);
    EXPECT_THROW((void)compute_monthly_si(synth::constant_series({2019, 2019}), {2019, 2020}), InputError);
}

TEST(Boxplot, QuartilesMatchSortOracle) {
    const auto& f = planted();
    const auto set = compute_seasonality(f.series, f.years);
    const auto box = si_boxplot_data(set.hourly);
    for (unsigned d = 1; d <= 7; d += 3) {
        for (unsigned h = 1; h <= 24; h += 5) {
            std::vector<double> samples;
            for (int y = f.years.first; y <= f.years.last; ++y) {
                for (unsigned m = 1; m <= 12; ++m) {
                    samples.push_back(set.hourly.at(y, m, d, h));
                }
            }
            const auto& b = box[d - 1][h - 1];
            EXPECT_EQ(b.count, 36u);
            EXPECT_DOUBLE_EQ(b.min, *std::min_element(samples.begin(), samples.end()));
            EXPECT_DOUBLE_EQ(b.max, *std::max_element(samples.begin(), samples.end()));
            EXPECT_NEAR(b.q1, oracle::sorted_quantile(samples, 0.25), 1e-14);
            EXPECT_NEAR(b.median, oracle::sorted_quantile(samples, 0.5), 1e-14);
            EXPECT_NEAR(b.q3, oracle::sorted_quantile(samples, 0.75), 1e-14);
        }
    }
}

TEST(Boxplot, QuantileRule) {
    EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile_sorted({5}, 0.75), 5.0);
}
