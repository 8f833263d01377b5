#include "bbl/errors.hpp"
#include "bbl/lottery.hpp"
#include "bbl/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace bbl;

namespace {

const Preferences kPrefs(0.8, 2.25);

DiscreteLottery two_state(double p_good) { return DiscreteLottery({0.0, 1.0}, {1.0 - p_good, p_good}); }

double mean_of(const DiscreteLottery& l, const std::vector<double>& q) {
    double e = 0.0;
    for (std::size_t s = 0; s < q.size(); ++s) e += q[s] * l.utilities()[s];
    return e;
}

}  // namespace

TEST(LotteryTest, SortsAndMerges) {
    const DiscreteLottery l({2.0, 0.0, 2.0}, {0.25, 0.5, 0.25});
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l.payoffs()[0], 0.0);
    EXPECT_EQ(l.payoffs()[1], 2.0);
    EXPECT_DOUBLE_EQ(l.probs()[1], 0.5);
}

TEST(LotteryTest, RejectsBadInput) {
    EXPECT_THROW(DiscreteLottery({}, {}), InputError);
    EXPECT_THROW(DiscreteLottery({0.0, 1.0}, {1.0}), InputError);
    EXPECT_THROW(DiscreteLottery({0.0, 1.0}, {0.0, 1.0}), InputError);
    EXPECT_THROW(DiscreteLottery({0.0, 1.0}, {0.5, 0.6}), InputError);
    EXPECT_THROW(DiscreteLottery({-1.0, 1.0}, {0.5, 0.5}, ConsumptionUtility::log()), InputError);
}

TEST(TotalUtilityTest, TwoStateClosedForms) {
    const auto l = two_state(0.9);
    EXPECT_NEAR(total_utility(l, std::vector<double>{0.0, 1.0}, kPrefs), 0.82, 1e-12);
    EXPECT_NEAR(total_utility(l, std::vector<double>{0.1, 0.9}, kPrefs), 0.81, 1e-12);
    EXPECT_NEAR(rational_utility(l, kPrefs), 0.81, 1e-12);
    // U_BS = eta p + (1 - eta lambda) q + (eta lambda - eta) p q over a grid.
    for (double p = 0.05; p < 1.0; p += 0.05) {
        for (double q = 0.0; q <= 1.0; q += 0.1) {
            const double closed = 0.8 * p + (1 - 0.8 * 2.25) * q + (0.8 * 2.25 - 0.8) * p * q;
            EXPECT_NEAR(total_utility(two_state(p), std::vector<double>{1 - q, q}, kPrefs), closed, 1e-12);
        }
    }
}

TEST(TotalUtilityTest, DegenerateLottery) {
    const DiscreteLottery l({3.0, 3.0}, {0.5, 0.5});
    ASSERT_EQ(l.size(), 1u);
    EXPECT_DOUBLE_EQ(total_utility(l, std::vector<double>{1.0}, kPrefs), 3.0);
    EXPECT_DOUBLE_EQ(rational_utility(l, kPrefs), 3.0);
    EXPECT_THROW((void)solve_optimal_beliefs(l, kPrefs), InputError);
}

TEST(TotalUtilityTest, RationalThreeStateBySummation) {
    const DiscreteLottery l({0.0, 1.0, 2.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    // E = 1; deviations -1, 0, 1 give mu = -2.25, 0, 1.
    EXPECT_NEAR(rational_utility(l, kPrefs), 1.0 + 0.8 * (-2.25 + 1.0) / 3.0, 1e-12);
}

TEST(TotalUtilityTest, RejectsInvalidBeliefs) {
    const auto l = two_state(0.5);
    EXPECT_THROW((void)total_utility(l, std::vector<double>{1.0}, kPrefs), InputError);
    EXPECT_THROW((void)total_utility(l, std::vector<double>{-0.1, 1.1}, kPrefs), InputError);
    EXPECT_THROW((void)total_utility(l, std::vector<double>{0.4, 0.4}, kPrefs), InputError);
}

TEST(GainProbabilityTest, Examples) {
    const DiscreteLottery l({0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
    EXPECT_DOUBLE_EQ(gain_probability(l, -1.0), 1.0);
    EXPECT_DOUBLE_EQ(gain_probability(l, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(gain_probability(l, 1.0), 0.8);
    EXPECT_DOUBLE_EQ(gain_probability(l, 2.5), 0.0);
}

TEST(SolveBeliefsTest, TwoStateCorners) {
    auto up = solve_optimal_beliefs(two_state(0.9), kPrefs);
    EXPECT_NEAR(up.q[0], 0.0, 1e-15);
    EXPECT_NEAR(up.q[1], 1.0, 1e-15);
    EXPECT_NEAR(up.subjective_expectation, 1.0, 1e-15);
    EXPECT_NEAR(up.total_utility, 0.82, 1e-12);

    auto down = solve_optimal_beliefs(two_state(0.5), kPrefs);
    EXPECT_NEAR(down.q[0], 1.0, 1e-15);
    EXPECT_NEAR(down.subjective_expectation, 0.0, 1e-15);
}

TEST(SolveBeliefsTest, BeatsSimplexGridAndRandomDraws) {
    std::mt19937_64 rng(11);
    std::gamma_distribution<double> expo(1.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto l = oracle::random_lottery(rng);
        const auto prefs = oracle::random_preferences(rng);
        const auto sol = solve_optimal_beliefs(l, prefs);
        const auto grid = oracle::grid_search_beliefs(l, prefs, 0.02);
        EXPECT_GE(sol.total_utility, grid.utility - 1e-12);
        EXPECT_NEAR(oracle::total_utility(l, sol.q, prefs), sol.total_utility, 1e-12);
        for (int k = 0; k < 200; ++k) {
            std::vector<double> q(l.size());
            for (double& v : q) v = expo(rng);
            const double s = std::accumulate(q.begin(), q.end(), 0.0);
            for (double& v : q) v /= s;
            EXPECT_GE(sol.total_utility, oracle::total_utility(l, q, prefs) - 1e-12);
        }
    }
}

TEST(SolveBeliefsTest, SolutionInvariants) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto l = oracle::random_lottery(rng, 5);
        const auto prefs = oracle::random_preferences(rng);
        const auto sol = solve_optimal_beliefs(l, prefs);
        const auto u = l.utilities();
        EXPECT_NEAR(std::accumulate(sol.q.begin(), sol.q.end(), 0.0), 1.0, 1e-12);
        for (double v : sol.q) EXPECT_GE(v, 0.0);
        EXPECT_NEAR(mean_of(l, sol.q), sol.subjective_expectation, 1e-12);
        EXPECT_GE(sol.subjective_expectation, u.front());
        EXPECT_LE(sol.subjective_expectation, u.back());
        EXPECT_TRUE(sol.expectation_interval.contains(sol.subjective_expectation));
        EXPECT_DOUBLE_EQ(sol.gain_mass, gain_probability(l, sol.subjective_expectation));
        EXPECT_GE(sol.total_utility, rational_utility(l, prefs) - 1e-12);
    }
}

TEST(SolveBeliefsTest, OptimismFollowsGainMass) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const auto l = oracle::random_lottery(rng);
        const auto prefs = oracle::random_preferences(rng);
        const auto sol = solve_optimal_beliefs(l, prefs);
        const double ep = l.rational_expectation();
        const double p0 = gain_probability(l, ep);
        const double ps = cutoff_probability(prefs);
        const double diff = sol.subjective_expectation - ep;
        if (std::abs(p0 - ps) <= 1e-12) {
            EXPECT_LE(std::abs(diff), 1e-12);
        } else if (p0 > ps) {
            EXPECT_GT(diff, 0.0);
        } else {
            EXPECT_LT(diff, 0.0);
        }
    }
}

TEST(SolveBeliefsTest, StationarityAtInteriorOptimum) {
    std::mt19937_64 rng(21);
    int interior = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto l = oracle::random_lottery(rng, 5);
        const auto prefs = oracle::random_preferences(rng);
        const auto sol = solve_optimal_beliefs(l, prefs);
        const auto u = l.utilities();
        const double e = sol.subjective_expectation;
        if (!(e > u.front() && e < u.back())) continue;
        ++interior;
        const double ps = cutoff_probability(prefs);
        EXPECT_GT(gain_probability(l, e - 1e-9), ps);
        EXPECT_LE(gain_probability(l, e + 1e-9), ps + 1e-12);
    }
    EXPECT_GT(interior, 20);
}

TEST(SolveBeliefsTest, PlateauIndifference) {
    // P_+ = 0.5 on (1, 2]: every expectation in [1, 2] is optimal at P* = 0.5.
    const DiscreteLottery l({0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
    const Preferences prefs(eta_for_cutoff(0.5, 2.25), 2.25);
    const auto sol = solve_optimal_beliefs(l, prefs);
    EXPECT_NEAR(sol.expectation_interval.lo, 1.0, 1e-12);
    EXPECT_NEAR(sol.expectation_interval.hi, 2.0, 1e-12);
    EXPECT_NEAR(sol.subjective_expectation, 1.0, 1e-12);
    const double u1 = total_utility(l, canonical_beliefs(l, 1.2), prefs);
    const double u2 = total_utility(l, canonical_beliefs(l, 1.7), prefs);
    EXPECT_NEAR(u1, u2, 1e-12);
    EXPECT_NEAR(u1, sol.total_utility, 1e-12);
}

TEST(SolveBeliefsTest, EpsilonTransferMonotone) {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> expo(1.0, 1.0);
    const double eps = 1e-4;
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const DiscreteLottery l = [&] {
            for (;;) {
                auto c = oracle::random_lottery(rng, 4);
                if (c.size() == 4) return c;
            }
        }();
        const auto prefs = oracle::random_preferences(rng);
        const double ps = cutoff_probability(prefs);
        const auto u = l.utilities();
        std::vector<double> q(4);
        for (double& v : q) v = expo(rng);
        const double s = std::accumulate(q.begin(), q.end(), 0.0);
        for (double& v : q) v /= s;
        const double e = mean_of(l, q);
        const double gp = gain_probability(l, e);
        if (std::abs(gp - ps) <= 1e-9) continue;
        const double base = total_utility(l, q, prefs);
        for (std::size_t lo = 0; lo < 4; ++lo) {
            for (std::size_t hi = lo + 1; hi < 4; ++hi) {
                // Upward transfer when gains dominate, downward otherwise.
                const std::size_t from = gp > ps ? lo : hi, to = gp > ps ? hi : lo;
                if (q[from] < eps) continue;
                auto moved = q;
                moved[from] -= eps;
                moved[to] += eps;
                const double e2 = mean_of(l, moved);
                bool crosses = false;
                for (double uk : u) crosses = crosses || (uk >= std::min(e, e2) && uk <= std::max(e, e2));
                if (crosses) continue;
                ++checked;
                EXPECT_GE(total_utility(l, moved, prefs), base - 1e-12);
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(CanonicalBeliefsTest, Examples) {
    const DiscreteLottery l({0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
    const auto rational = canonical_beliefs(l, l.rational_expectation());
    for (std::size_t s = 0; s < 3; ++s) EXPECT_NEAR(rational[s], l.probs()[s], 1e-12);
    const auto top = canonical_beliefs(l, 2.0);
    EXPECT_NEAR(top[2], 1.0, 1e-12);
    const auto mid = canonical_beliefs(l, 1.5);
    EXPECT_NEAR(mean_of(l, mid), 1.5, 1e-12);
    EXPECT_NEAR(std::accumulate(mid.begin(), mid.end(), 0.0), 1.0, 1e-12);
    EXPECT_THROW((void)canonical_beliefs(l, 2.5), InputError);
}

TEST(CanonicalBeliefsTest, TiltOverweightsGainsWhenBiasingUp) {
    const DiscreteLottery l({0.0, 1.0, 2.0, 5.0}, {0.3, 0.3, 0.2, 0.2});
    const double target = l.rational_expectation() + 0.5;
    const auto q = canonical_beliefs(l, target);
    for (std::size_t s = 0; s < 4; ++s) {
        const double ratio = q[s] / l.probs()[s];
        if (l.utilities()[s] >= target) {
            EXPECT_GE(ratio, 1.0);
        } else {
            EXPECT_LE(ratio, 1.0);
        }
    }
}

TEST(GeneralResidualTest, SteepFamilyMatchesLinearInterval) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = oracle::random_lottery(rng);
        const auto lin = oracle::random_preferences(rng);
        const Preferences gen(lin.eta(), lin.lambda0(), 1.0, GainLossSpec::general(1.0 - 1e-12, 1e6));
        if (!(lin.eta() * (1.0 - 1e-12) < 1.0)) continue;
        const auto a = solve_optimal_beliefs(l, lin);
        const auto b = solve_optimal_beliefs(l, gen);
        EXPECT_GE(b.subjective_expectation, a.expectation_interval.lo - 1e-3);
        EXPECT_LE(b.subjective_expectation, a.expectation_interval.hi + 1e-3);
    }
}

TEST(GeneralResidualTest, InteriorRootsSatisfyResidual) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int interior = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto l = oracle::random_lottery(rng);
        const double lambda = 1.5 + 3.0 * unit(rng);
        const double beta = 0.5 + unit(rng);
        const double eta = (0.2 + 0.79 * unit(rng)) / beta;
        if (!(eta <= 1.0)) continue;
        const Preferences prefs(eta, lambda, 1.0, GainLossSpec::general(beta, 0.2 + 3.0 * unit(rng)));
        const auto sol = general_residual_solve(l, prefs);
        const auto u = l.utilities();
        const double e = sol.subjective_expectation;
        EXPECT_GE(sol.total_utility, rational_utility(l, prefs) - 1e-12);
        bool at_node = false;
        for (double uk : u) at_node = at_node || std::abs(uk - e) <= 1e-12;
        if (at_node) continue;
        ++interior;
        EXPECT_LE(std::abs(general_residual(l, prefs, e)), 1e-8);
    }
    EXPECT_GT(interior, 10);
}

TEST(GeneralResidualTest, TwoStateCutoffRule) {
    const Preferences prefs(0.7, 3.0, 1.0, GainLossSpec::general(1.2, 1.5));
    for (double spread : {0.5, 1.0, 3.0}) {
        const double cut = general_two_state_cutoff(prefs, spread);
        for (double p = 0.02; p < 0.99; p += 0.02) {
            const DiscreteLottery l({0.0, spread}, {1.0 - p, p});
            const auto sol = general_residual_solve(l, prefs);
            if (std::abs(p - cut) < 1e-6) continue;
            EXPECT_EQ(sol.q[1] > 1.0 - 1e-12, p > cut) << "spread " << spread << " p " << p;
        }
    }
}
