#pragma once

#include "bbl/distribution.hpp"
#include "bbl/preferences.hpp"
#include "bbl/utility.hpp"

namespace bbl {

/// A risk-free asset with gross return r_f and a risky asset whose realized
/// excess return R has the given distribution. Terminal wealth is r_f + alpha*R.
struct Asset {
    double r_f = 1.0;
    ContinuousDistribution excess = ContinuousDistribution::normal(0.0, 1.0);
};

/// Closed interval for the risky share. For Power and Log utility both ends
/// must keep wealth positive over the whole support of R.
struct AlphaBounds {
    double lo = -10.0;
    double hi = 10.0;
};

struct PortfolioSolution {
    double alpha = 0.0;
    /// Expectation of u(r_f + alpha*R) under the agent's beliefs at alpha.
    double belief_expectation = 0.0;
    /// Certainty-equivalent excess return; NaN at alpha = 0.
    double r_ce = 0.0;
    /// Objective value at alpha (expected utility for the rational agent, total
    /// utility with optimal beliefs for the others).
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
};

/// Throws DomainError when bounds are empty or when u(r_f + alpha*R) is
/// undefined somewhere on the support for an alpha in the bounds.
void check_alpha_bounds(const Asset& asset, const ConsumptionUtility& utility,
                        const AlphaBounds& bounds);

/// Widest bounds inside [lo, hi] that keep wealth at least `margin` above the
/// utility's domain floor.
[[nodiscard]] AlphaBounds feasible_alpha_bounds(const Asset& asset,
                                                const ConsumptionUtility& utility,
                                                AlphaBounds within, double margin = 1e-3);

/// E_f u(r_f + alpha*R).
[[nodiscard]] double rational_objective(const Asset& asset, const ConsumptionUtility& utility,
                                        double alpha);

/// Objective probability that u(r_f + alpha*R) weakly exceeds its expectation.
[[nodiscard]] double rational_gain_probability(const Asset& asset,
                                               const ConsumptionUtility& utility, double alpha);

/// Excess return r at which the optimal beliefs split gains from losses:
/// the upper-tail quantile at P* for alpha >= 0 and at 1 - P* for alpha < 0.
[[nodiscard]] double belief_cutoff_return(const Asset& asset, const Preferences& prefs,
                                          double alpha);

/// Total utility at alpha when beliefs are chosen optimally:
/// eta * E_f u + eta * (lambda - 1) * (integral of f u over the loss region).
/// Continuous at alpha = 0 where it equals u(r_f).
[[nodiscard]] double sophisticated_objective(const Asset& asset, const Preferences& prefs,
                                             const ConsumptionUtility& utility, double alpha);

/// Integral of f(R) u'(r_f + alpha*R) R over the loss region at alpha.
[[nodiscard]] double loss_region_weighted_return(const Asset& asset, const Preferences& prefs,
                                                 const ConsumptionUtility& utility, double alpha);

/// (u^{-1}(E_g u) - r_f) / alpha with E_g u the optimal subjective expectation
/// of u(r_f + alpha*R). Throws InputError at alpha = 0.
[[nodiscard]] double certainty_equivalent_excess(const Asset& asset, double alpha,
                                                 const Preferences& prefs,
                                                 const ConsumptionUtility& utility);

/// Maximizes E_f u(r_f + alpha*R) by golden-section search over the bounds.
[[nodiscard]] PortfolioSolution rational_alpha(const Asset& asset,
                                               const ConsumptionUtility& utility,
                                               AlphaBounds bounds = {});

/// Damped fixed point between optimal beliefs given alpha and the subjective
/// expected-utility maximizing alpha given beliefs. Starts from alpha_RE,
/// -alpha_RE and both bounds; among converged fixed points the one with the
/// highest total utility wins (lowest alpha on ties). converged is false when
/// no start converges within 200 iterations.
[[nodiscard]] PortfolioSolution naive_alpha(const Asset& asset, const Preferences& prefs,
                                            const ConsumptionUtility& utility,
                                            AlphaBounds bounds = {});

/// Maximizes sophisticated_objective, separately on each sign of alpha.
[[nodiscard]] PortfolioSolution sophisticated_alpha(const Asset& asset, const Preferences& prefs,
                                                    const ConsumptionUtility& utility,
                                                    AlphaBounds bounds = {});

}  // namespace bbl
