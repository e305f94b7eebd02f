#include <gtest/gtest.h>

#include <random>

#include "loadstab/stats.hpp"
#include "support/oracles.hpp"

using namespace loadstab;
using namespace loadstab::stats;

TEST(TCdf, MatchesQuadrature) {
    for (const double df : {1.0, 5.0, 11.0, 30.0}) {
        for (double t = -10.0; t <= 10.0; t += 0.25) {
            EXPECT_NEAR(t_cdf(t, df), oracle::t_cdf(t, df), 1e-8) << "t=" << t << " df=" << df;
        }
    }
}

TEST(TCdf, SymmetryAndKnownValues) {
    EXPECT_DOUBLE_EQ(t_cdf(0.0, 7.0), 0.5);
    EXPECT_NEAR(t_cdf(1.0, 1.0), 0.75, 1e-15);  // Cauchy
    EXPECT_NEAR(t_cdf(2.0, 2.0), 0.5 + 2.0 / (2.0 * std::sqrt(6.0)), 1e-14);
    for (const double t : {0.1, 1.3, 4.0}) {
        EXPECT_NEAR(t_cdf(t, 5.5) + t_cdf(-t, 5.5), 1.0, 1e-14);
    }
    EXPECT_THROW((void)t_cdf(1.0, 0.0), DomainError);
}

TEST(TQuantile, InvertsCdf) {
    EXPECT_NEAR(t_quantile(0.975, 10.0), 2.228138851986, 1e-9);
    EXPECT_NEAR(t_cdf(t_quantile(0.05, 3.3), 3.3), 0.05, 1e-12);
}

TEST(Summarize, SampleSd) {
    const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
    const auto s = summarize(x);
    EXPECT_DOUBLE_EQ(s.mean, 5.0);
    EXPECT_NEAR(s.sd, std::sqrt(32.0 / 7.0), 1e-14);
}

TEST(OneTailed, SwapMirrorsTails) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(1.0, 0.05);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> a(12), b(12);
        for (auto& v : a) v = n(rng);
        for (auto& v : b) v = n(rng);
        const auto sa = summarize(a), sb = summarize(b);
        const double eps = 0.01 * k;
        const auto l = one_tailed_welch_test(sa, sb, eps, Tail::left);
        const auto r = one_tailed_welch_test(sb, sa, -eps, Tail::right);
        EXPECT_NEAR(l.p_value, r.p_value, 1e-14);
        EXPECT_EQ(l.rejected, r.rejected);
        EXPECT_EQ(l.rejected, oracle::welch_rejects(a, b, eps, true, 0.05));
    }
}

TEST(OneTailed, DegenerateSamples) {
    const SampleSummary a{12, 1.0, 0.0}, b{12, 1.0, 0.0};
    const auto same = one_tailed_welch_test(a, b, 0.0, Tail::left);
    EXPECT_DOUBLE_EQ(same.p_value, 0.5);
    EXPECT_FALSE(same.rejected);
    const auto shifted = one_tailed_welch_test(a, b, 0.01, Tail::left);
    EXPECT_TRUE(shifted.rejected);
    const auto wrong_side = one_tailed_welch_test(a, b, 0.01, Tail::right);
    EXPECT_FALSE(wrong_side.rejected);
}

TEST(OneTailed, PooledVariance) {
    const SampleSummary a{12, 1.0, 0.1}, b{12, 0.9, 0.1};
    const auto r = one_tailed_test(a, b, 0.0, Tail::right, 0.05, VarianceModel::pooled);
    EXPECT_DOUBLE_EQ(r.degrees_of_freedom, 22.0);
    EXPECT_NEAR(r.t_statistic, 0.1 / std::sqrt(0.01 / 6.0), 1e-12);
    EXPECT_TRUE(r.rejected);
}

TEST(Ols, RandomFixturesMatchNormalEquations) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> size(4, 25);
    for (int k = 0; k < 20; ++k) {
        const int n = size(rng);
        const double a = 1e6 * u(rng), b = 1e4 * (u(rng) - 0.3);
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = 100.0 + 300.0 * u(rng);
            y[i] = a + b * x[i] + 1e5 * (u(rng) - 0.5);
        }
        const auto m = ols_fit(x, y);
        const auto o = oracle::ols(x, y);
        const auto close = [](double p, double q) { return std::abs(p - q) <= 1e-10 * std::max(1.0, std::abs(q)); };
        EXPECT_TRUE(close(m.intercept, o.intercept)) << m.intercept << " " << o.intercept;
        EXPECT_TRUE(close(m.slope, o.slope));
        EXPECT_TRUE(close(m.se_intercept, o.se_intercept));
        EXPECT_TRUE(close(m.se_slope, o.se_slope));
        EXPECT_NEAR(m.r_squared, o.r_squared, 1e-10);
    }
}

TEST(Ols, ExactLine) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 + 2.0 * v);
    const auto m = ols_fit(x, y);
    EXPECT_NEAR(m.intercept, 3.0, 1e-12);
    EXPECT_NEAR(m.slope, 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(m.r_squared, 1.0);
    EXPECT_NEAR(m.predict(10.0), 23.0, 1e-12);
}

TEST(Ols, PValueFromT) {
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    const std::vector<double> y{1.1, 1.9, 3.2, 3.9, 5.3, 5.8};
    const auto m = ols_fit(x, y);
    EXPECT_NEAR(m.p_slope, 2.0 * oracle::t_cdf(-m.slope / m.se_slope, 4.0), 1e-9);
}

TEST(Ols, Errors) {
    const std::vector<double> two{1, 2};
    EXPECT_THROW((void)ols_fit(two, two), DomainError);
    const std::vector<double> flat{3, 3, 3};
    const std::vector<double> y{1, 2, 3};
    EXPECT_THROW((void)ols_fit(flat, y), DomainError);
}

TEST(Pearson, KnownValues) {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{2, 4, 6, 8};
    const std::vector<double> z{8, 6, 4, 2};
    EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
    EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
    const std::vector<double> w{1, 3, 2, 4};
    EXPECT_NEAR(pearson(x, w), 0.8, 1e-14);
}
