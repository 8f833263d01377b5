#pragma once

#include "bbl/lottery.hpp"
#include "bbl/preferences.hpp"

#include <span>

namespace bbl {

enum class TimingChoice { Early, Wait, Indifferent };

struct TimingVerdict {
    double u_early = 0.0;
    double u_wait = 0.0;
    TimingChoice verdict = TimingChoice::Indifferent;
    double tolerance = 1e-10;
};

/// Utility of observing a fully informative signal at t=1:
/// sum q_s u_s + gamma * eta * sum q_s mu(u_s - sum q_s u_s).
[[nodiscard]] double utility_early(const DiscreteLottery& lottery, std::span<const double> q,
                                   const Preferences& prefs);

/// Utility of waiting for the realization; identical to total_utility.
[[nodiscard]] double utility_wait(const DiscreteLottery& lottery, std::span<const double> q,
                                  const Preferences& prefs);

/// Early/Wait/Indifferent at optimal beliefs, with indifference tolerance 1e-10
/// on the utility difference. When the rational expectation is itself optimal
/// the rational beliefs are used, otherwise the solver's canonical beliefs.
[[nodiscard]] TimingVerdict timing_preference(const DiscreteLottery& lottery,
                                              const Preferences& prefs);

[[nodiscard]] const char* to_string(TimingChoice choice);

}  // namespace bbl
