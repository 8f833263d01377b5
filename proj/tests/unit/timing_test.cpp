#include "bbl/lottery.hpp"
#include "bbl/oracles.hpp"
#include "bbl/timing.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bbl;

namespace {
const Preferences kPrefs(0.8, 2.25);
DiscreteLottery two_state(double p) { return DiscreteLottery({0.0, 1.0}, {1.0 - p, p}); }
}  // namespace

TEST(TimingTest, UtilityEarlyExamples) {
    const auto l = two_state(0.9);
    EXPECT_DOUBLE_EQ(utility_early(l, std::vector<double>{0.0, 1.0}, kPrefs), 1.0);
    EXPECT_DOUBLE_EQ(utility_early(l, std::vector<double>{1.0, 0.0}, kPrefs), 0.0);
    EXPECT_NEAR(utility_early(two_state(0.5), std::vector<double>{0.5, 0.5}, kPrefs), 0.25, 1e-12);
    // q - gamma eta (lambda - 1) q (1 - q)
    const Preferences half = kPrefs.with_gamma(0.5);
    EXPECT_NEAR(utility_early(l, std::vector<double>{0.7, 0.3}, half), 0.3 - 0.5 * 0.8 * 1.25 * 0.21, 1e-12);
}

TEST(TimingTest, UtilityWaitExamples) {
    EXPECT_NEAR(utility_wait(two_state(0.9), std::vector<double>{0.0, 1.0}, kPrefs), 0.82, 1e-12);
    EXPECT_DOUBLE_EQ(utility_wait(DiscreteLottery({1.0}, {1.0}), std::vector<double>{1.0}, kPrefs), 1.0);
    EXPECT_NEAR(utility_wait(two_state(0.6), std::vector<double>{1.0, 0.0}, kPrefs), 0.8 * 0.6, 1e-12);
}

TEST(TimingTest, VerdictExamples) {
    const auto v = timing_preference(two_state(0.9), kPrefs);
    EXPECT_EQ(v.verdict, TimingChoice::Early);
    EXPECT_NEAR(v.u_early, 1.0, 1e-12);
    EXPECT_NEAR(v.u_wait, 0.82, 1e-12);
    EXPECT_EQ(timing_preference(two_state(0.5), kPrefs).verdict, TimingChoice::Wait);
    EXPECT_EQ(timing_preference(two_state(0.8), kPrefs).verdict, TimingChoice::Indifferent);
    EXPECT_STREQ(to_string(TimingChoice::Early), "early");
}

TEST(TimingTest, VerdictMatchesGainMassRule) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const auto l = oracle::random_lottery(rng, 5);
        const auto prefs = oracle::random_preferences(rng);
        const double p0 = gain_probability(l, l.rational_expectation());
        const double ps = cutoff_probability(prefs);
        const auto v = timing_preference(l, prefs);
        if (std::abs(p0 - ps) <= 1e-12) {
            EXPECT_EQ(v.verdict, TimingChoice::Indifferent);
        } else {
            EXPECT_EQ(v.verdict, p0 > ps ? TimingChoice::Early : TimingChoice::Wait);
        }
    }
}

TEST(TimingTest, TwoStateConditionD) {
    for (int i = 1; i < 100; ++i) {
        for (int j = 1; j < 100; ++j) {
            const double p = i / 100.0, q = j / 100.0;
            const auto l = two_state(p);
            const std::vector<double> qv{1.0 - q, q};
            const double diff = utility_early(l, qv, kPrefs) - utility_wait(l, qv, kPrefs);
            const double cond = (q - p) * (1.0 - q) - 2.25 * (p - q) * q;
            if (std::abs(cond) < 1e-12) continue;
            EXPECT_EQ(diff > 0.0, cond > 0.0) << p << " " << q;
        }
    }
}

TEST(TimingTest, LowGammaWithOptimismPrefersEarly) {
    const Preferences prefs = kPrefs.with_gamma(0.5);
    for (double p = 0.81; p < 1.0; p += 0.01) {
        EXPECT_EQ(timing_preference(two_state(p), prefs).verdict, TimingChoice::Early) << p;
    }
    for (double q = 0.55; q < 1.0; q += 0.05) {
        const auto l = two_state(0.5);
        const std::vector<double> qv{1.0 - q, q};
        EXPECT_GT(utility_early(l, qv, prefs), utility_wait(l, qv, prefs)) << q;
    }
}

TEST(TimingTest, GapShrinksWithGammaWhenProspectiveTermNegative) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = oracle::random_lottery(rng);
        const auto prefs = oracle::random_preferences(rng);
        const auto sol = solve_optimal_beliefs(l, prefs);
        if (!(sol.subjective_expectation > l.rational_expectation())) continue;
        double prospective = 0.0;
        for (std::size_t s = 0; s < l.size(); ++s) {
            prospective += sol.q[s] * gain_loss(l.utilities()[s] - sol.subjective_expectation, prefs);
        }
        if (!(prospective < 0.0)) continue;
        double prev = 1e300;
        for (double g = 0.0; g <= 1.0; g += 0.1) {
            const auto pg = prefs.with_gamma(g);
            const double gap = utility_early(l, sol.q, pg) - utility_wait(l, sol.q, pg);
            EXPECT_LE(gap, prev + 1e-12);
            prev = gap;
        }
    }
}
