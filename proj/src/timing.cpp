#include "bbl/timing.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <vector>

namespace bbl {

namespace {
constexpr double kIndifferenceTol = 1e-10;
}

double utility_early(const DiscreteLottery& lottery, std::span<const double> q,
                     const Preferences& prefs) {
    if (q.size() != lottery.size()) throw InputError("belief vector length mismatch");
    const auto u = lottery.utilities();
    double e = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) e += q[s] * u[s];
    double prospective = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) prospective += q[s] * gain_loss(u[s] - e, prefs);
    return e + prefs.gamma() * prefs.eta() * prospective;
}

double utility_wait(const DiscreteLottery& lottery, std::span<const double> q,
                    const Preferences& prefs) {
    return total_utility(lottery, q, prefs);
}

TimingVerdict timing_preference(const DiscreteLottery& lottery, const Preferences& prefs) {
    const BeliefSolution sol = solve_optimal_beliefs(lottery, prefs);
    const double rational = lottery.rational_expectation();
    std::vector<double> q = sol.expectation_interval.contains(rational, 1e-12)
                                ? std::vector<double>(lottery.probs().begin(), lottery.probs().end())
                                : sol.q;

    TimingVerdict out;
    out.tolerance = kIndifferenceTol;
    out.u_early = utility_early(lottery, q, prefs);
    out.u_wait = utility_wait(lottery, q, prefs);
    const double diff = out.u_early - out.u_wait;
    if (std::abs(diff) <= kIndifferenceTol) {
        out.verdict = TimingChoice::Indifferent;
    } else {
        out.verdict = diff > 0.0 ? TimingChoice::Early : TimingChoice::Wait;
    }
    return out;
}

const char* to_string(TimingChoice choice) {
    switch (choice) {
    case TimingChoice::Early: return "early";
    case TimingChoice::Wait: return "wait";
    case TimingChoice::Indifferent: return "indifferent";
    }
    return "indifferent";
}

}  // namespace bbl
