#include "bbl/errors.hpp"
#include "bbl/oracles.hpp"
#include "bbl/portfolio.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bbl;

namespace {

Preferences at_cutoff(double p_star) { return Preferences(eta_for_cutoff(p_star, 2.25), 2.25); }

// Bounded excess returns so that CRRA wealth stays positive over wide bounds.
Asset naive_asset() { return {1.0, ContinuousDistribution::uniform(-0.05, 0.95)}; }
Asset sophisticated_asset() { return {1.0, ContinuousDistribution::uniform(-0.4, 0.6)}; }

const auto kPower = ConsumptionUtility::power(2.0);

}  // namespace

TEST(PortfolioTest, BoundsMustKeepWealthPositive) {
    const Asset a{1.0, ContinuousDistribution::normal(0.05, 0.2)};
    EXPECT_THROW((void)rational_alpha(a, kPower, {-10.0, 10.0}), DomainError);
    const auto b = feasible_alpha_bounds(a, kPower, {-10.0, 10.0});
    EXPECT_GT(b.hi, 0.6);
    EXPECT_LT(b.hi, 0.65);
    EXPECT_NO_THROW((void)rational_alpha(a, kPower, b));
    EXPECT_NO_THROW((void)rational_alpha(a, ConsumptionUtility::linear(), {-10.0, 10.0}));
}

TEST(RationalAlphaTest, Examples) {
    const Asset zero_mean{1.0, ContinuousDistribution::normal(0.0, 0.2)};
    EXPECT_NEAR(rational_alpha(zero_mean, kPower, {-0.5, 0.5}).alpha, 0.0, 1e-6);
    EXPECT_NEAR(rational_alpha(zero_mean, ConsumptionUtility::log(), {-0.5, 0.5}).alpha, 0.0, 1e-6);
    const Asset up{1.0, ContinuousDistribution::normal(0.05, 0.2)};
    EXPECT_NEAR(rational_alpha(up, ConsumptionUtility::linear(), {0.0, 1.0}).alpha, 1.0, 1e-9);

    const AlphaBounds b = feasible_alpha_bounds(up, kPower, {-10.0, 10.0});
    const auto sol = rational_alpha(up, kPower, b);
    const auto grid = oracle::grid_search_alpha(
        [&](double x) { return oracle::rational_objective(up, kPower, x); }, b.lo, b.hi, 20001);
    EXPECT_GT(sol.alpha, 0.0);
    EXPECT_NEAR(sol.alpha, grid.alpha, 1e-4);
}

TEST(RationalAlphaTest, SignFollowsMean) {
    for (double mean : {-0.1, -0.02, 0.02, 0.1}) {
        const Asset a{1.0, ContinuousDistribution::uniform(mean - 0.4, mean + 0.4)};
        for (const auto& u : {ConsumptionUtility::linear(), ConsumptionUtility::log(), kPower}) {
            const auto s = rational_alpha(a, u, {-1.5, 1.5});
            EXPECT_EQ(s.alpha > 0.0, mean > 0.0);
            EXPECT_GT(std::abs(s.alpha), 1e-6);
        }
    }
}

TEST(SophisticatedAlphaTest, ContinuousAtZero) {
    const auto prefs = at_cutoff(0.3);
    const Asset a = sophisticated_asset();
    EXPECT_NEAR(sophisticated_objective(a, prefs, kPower, 1e-6), sophisticated_objective(a, prefs, kPower, -1e-6), 1e-6);
    EXPECT_NEAR(sophisticated_objective(a, prefs, kPower, 0.0), kPower(1.0), 1e-12);
}

TEST(SophisticatedAlphaTest, NoLossAversionIsRational) {
    const Asset a = sophisticated_asset();
    const Preferences flat(eta_for_cutoff(0.5, 1.0 + 1e-9), 1.0 + 1e-9);
    EXPECT_NEAR(sophisticated_alpha(a, flat, kPower, {-1.5, 2.4}).alpha,
                rational_alpha(a, kPower, {-1.5, 2.4}).alpha, 1e-4);
}

TEST(SophisticatedAlphaTest, MatchesGridOracle) {
    const Asset a = sophisticated_asset();
    for (double p : {0.2, 0.45, 0.75}) {
        const auto prefs = at_cutoff(p);
        const auto sol = sophisticated_alpha(a, prefs, kPower, {-1.5, 2.4});
        const auto grid = oracle::grid_search_alpha(oracle::sophisticated_objective(a, prefs, kPower), -1.5, 2.4);
        EXPECT_LE(std::abs(sol.alpha - grid.alpha), grid.step) << p;
    }
}

TEST(SophisticatedAlphaTest, LossRegionReturnOrdersAgainstRational) {
    const Asset a = sophisticated_asset();
    const double alpha_re = rational_alpha(a, kPower, {-1.5, 2.4}).alpha;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto prefs = at_cutoff(p);
        const double w = loss_region_weighted_return(a, prefs, kPower, alpha_re);
        const double alpha = sophisticated_alpha(a, prefs, kPower, {-1.5, 2.4}).alpha;
        if (std::abs(w) < 1e-6) continue;
        EXPECT_EQ(alpha > alpha_re, w > 0.0) << p;
    }
}

TEST(SophisticatedAlphaTest, ComparativeStaticsFollowCertaintyEquivalent) {
    const Asset a = sophisticated_asset();
    int checked = 0;
    for (double p = 0.05; p < 0.94; p += 0.05) {
        const auto s0 = sophisticated_alpha(a, at_cutoff(p), kPower, {-1.5, 2.4});
        const auto s1 = sophisticated_alpha(a, at_cutoff(p + 0.01), kPower, {-1.5, 2.4});
        if (!(s0.alpha > 0.0) || !(std::abs(s0.r_ce) > 0.05)) continue;
        ++checked;
        EXPECT_EQ(s1.alpha - s0.alpha > 0.0, s0.r_ce < 0.0) << p;
    }
    EXPECT_GT(checked, 10);
}

TEST(CertaintyEquivalentTest, Examples) {
    const Asset n{0.0, ContinuousDistribution::normal(1.0, 1.0)};
    const auto lin = ConsumptionUtility::linear();
    EXPECT_NEAR(certainty_equivalent_excess(n, 0.5, at_cutoff(0.5), lin), 1.0, 1e-9);
    EXPECT_NEAR(certainty_equivalent_excess(n, 2.0, at_cutoff(0.8), lin), 0.1583787664270857, 1e-9);
    EXPECT_THROW((void)certainty_equivalent_excess(n, 0.0, at_cutoff(0.5), lin), InputError);

    const Asset a = sophisticated_asset();
    const auto prefs = at_cutoff(0.3);
    const double alpha = 1.3;
    const double rce = certainty_equivalent_excess(a, alpha, prefs, kPower);
    const double eg_u = kPower(a.r_f + alpha * belief_cutoff_return(a, prefs, alpha));
    EXPECT_NEAR(kPower(a.r_f + alpha * rce), eg_u, 1e-9);
}

TEST(NaiveAlphaTest, KnifeEdgeReturnsRational) {
    const Asset a = naive_asset();
    const AlphaBounds b{-1.0, 19.0};
    const double alpha_re = rational_alpha(a, kPower, b).alpha;
    const double p0 = rational_gain_probability(a, kPower, alpha_re);
    const auto sol = naive_alpha(a, at_cutoff(p0), kPower, b);
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.alpha, alpha_re, 1e-5);
}

TEST(NaiveAlphaTest, OptimistsAndPessimistsOrder) {
    const Asset a = naive_asset();
    const AlphaBounds b{-1.0, 19.0};
    const double alpha_re = rational_alpha(a, kPower, b).alpha;
    const double p0 = rational_gain_probability(a, kPower, alpha_re);
    for (double p : {0.1, 0.3, 0.7, 0.9}) {
        const auto sol = naive_alpha(a, at_cutoff(p), kPower, b);
        EXPECT_TRUE(sol.converged) << p;
        if (p0 > p) {
            EXPECT_TRUE(sol.alpha >= alpha_re || sol.alpha <= 0.0) << p << " " << sol.alpha;
        } else {
            EXPECT_GT(sol.alpha, 0.0) << p;
            EXPECT_LE(sol.alpha, alpha_re) << p;
        }
    }
}

TEST(NaiveAlphaTest, LinearUtilityRunsToCorner) {
    const Asset a{1.0, ContinuousDistribution::normal(0.05, 0.2)};
    const auto sol = naive_alpha(a, at_cutoff(0.3), ConsumptionUtility::linear(), {0.0, 1.0});
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.alpha, 1.0, 1e-7);
}
