#pragma once

#include "bbl/preferences.hpp"
#include "bbl/utility.hpp"

#include <span>
#include <vector>

namespace bbl {

/// A finite lottery over material payoffs. On construction payoffs are sorted
/// ascending and equal payoffs are merged (their probabilities summed).
class DiscreteLottery {
public:
    /// Throws InputError on length mismatch, empty input, non-finite payoffs,
    /// nonpositive probabilities, probabilities not summing to 1 within 1e-12,
    /// or payoffs outside the domain of the utility.
    DiscreteLottery(std::vector<double> payoffs, std::vector<double> probs,
                    ConsumptionUtility utility = ConsumptionUtility::linear());

    [[nodiscard]] std::size_t size() const { return payoffs_.size(); }
    [[nodiscard]] std::span<const double> payoffs() const { return payoffs_; }
    [[nodiscard]] std::span<const double> probs() const { return probs_; }
    /// u(Z_s), ascending.
    [[nodiscard]] std::span<const double> utilities() const { return utilities_; }
    [[nodiscard]] const ConsumptionUtility& utility() const { return utility_; }

    /// Objective expectation of consumption utility, sum p_s u_s.
    [[nodiscard]] double rational_expectation() const;

private:
    std::vector<double> payoffs_;
    std::vector<double> probs_;
    std::vector<double> utilities_;
    ConsumptionUtility utility_;
};

struct ExpectationInterval {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] bool contains(double x, double tol = 0.0) const {
        return x >= lo - tol && x <= hi + tol;
    }
};

/// Optimal subjective beliefs. `q` is aligned with the lottery's merged,
/// sorted states.
struct BeliefSolution {
    std::vector<double> q;
    double subjective_expectation = 0.0;
    double gain_mass = 0.0;
    double total_utility = 0.0;
    ExpectationInterval expectation_interval;
};

/// U = sum q_s u_s + eta * sum p_s mu(u_s - sum q_s u_s).
/// Throws InputError when q has the wrong length or is not a probability vector.
[[nodiscard]] double total_utility(const DiscreteLottery& lottery, std::span<const double> q,
                                   const Preferences& prefs);

/// total_utility evaluated at q = p.
[[nodiscard]] double rational_utility(const DiscreteLottery& lottery, const Preferences& prefs);

/// P_+ = sum of p_s over states with u_s >= expectation.
[[nodiscard]] double gain_probability(const DiscreteLottery& lottery, double expectation);

/// Exact maximizer of total_utility. With linear gain-loss the utility is
/// concave and piecewise linear in the subjective expectation E with slope
/// eta*(lambda-1)*(P_+(E) - P*), so the argmax is read off the breakpoints.
/// The leftmost optimal expectation is returned. General gain-loss specs are
/// dispatched to general_residual_solve. Requires at least two states.
[[nodiscard]] BeliefSolution solve_optimal_beliefs(const DiscreteLottery& lottery,
                                                   const Preferences& prefs);

/// Canonical belief vector with the given subjective expectation: p tilted by
/// one factor on {u_s >= target} and another on the rest, falling back to a
/// blend of the extreme states when the tilt is infeasible.
/// Throws InputError when target lies outside [u_1, u_S].
[[nodiscard]] std::vector<double> canonical_beliefs(const DiscreteLottery& lottery,
                                                    double target_expectation);

/// r(E) = sum_{u_s < E} p_s (lambda(E - u_s) - 1) - (1 - eta*beta)/(eta*beta).
/// dU/dE = -eta*beta*r(E) under the general gain-loss family.
[[nodiscard]] double general_residual(const DiscreteLottery& lottery, const Preferences& prefs,
                                      double expectation);

/// Optimal beliefs under the general constant-marginal gain-loss family,
/// found by scanning each payoff segment for sign changes of the residual,
/// bisecting them, and keeping the best root or corner by total utility.
[[nodiscard]] BeliefSolution general_residual_solve(const DiscreteLottery& lottery,
                                                    const Preferences& prefs);

/// Two-state cutoff of the general family: with payoffs whose utilities are
/// `spread` apart the top state gets q = 1 iff the good-state probability is
/// at least (eta*beta*lambda(spread) - 1) / (eta*beta*(lambda(spread) - 1)).
[[nodiscard]] double general_two_state_cutoff(const Preferences& prefs, double spread);

}  // namespace bbl
