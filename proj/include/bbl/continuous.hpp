#pragma once

#include "bbl/distribution.hpp"
#include "bbl/preferences.hpp"

namespace bbl {

enum class AgentKind { Naive, Sophisticated };
enum class LotteryPreference { PreferA, PreferB, Indifferent };

struct LotteryComparison {
    double value_a = 0.0;
    double value_b = 0.0;
    LotteryPreference verdict = LotteryPreference::Indifferent;
    double tolerance = 1e-10;
};

/// The payoff a whose upper-tail mass equals p_star. Under optimal beliefs this
/// is the subjective expectation of the payoff. Throws InputError unless
/// 0 < p_star < 1.
[[nodiscard]] double subjective_expectation(const ContinuousDistribution& dist, double p_star);

/// Integral of f(z) z over (-inf, a], by quadrature.
[[nodiscard]] double partial_expectation(const ContinuousDistribution& dist, double a);

/// Ranking statistic of a naive agent: subjective_expectation at P*.
[[nodiscard]] double naive_value(const ContinuousDistribution& dist, const Preferences& prefs);

/// eta * E_f + eta * (lambda - 1) * partial_expectation(a), the total utility
/// of a sophisticated agent holding the lottery under linear consumption utility.
[[nodiscard]] double sophisticated_value(const ContinuousDistribution& dist,
                                         const Preferences& prefs);

/// Ranks two lotteries for the given agent kind, indifferent within 1e-10.
[[nodiscard]] LotteryComparison compare(const ContinuousDistribution& a,
                                        const ContinuousDistribution& b,
                                        const Preferences& prefs, AgentKind kind);

[[nodiscard]] const char* to_string(LotteryPreference pref);
[[nodiscard]] const char* to_string(AgentKind kind);

}  // namespace bbl
