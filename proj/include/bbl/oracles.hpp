#pragma once

#include "bbl/distribution.hpp"
#include "bbl/lottery.hpp"
#include "bbl/portfolio.hpp"
#include "bbl/preferences.hpp"

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

/// Brute-force reference computations. Nothing here calls the solvers it is
/// used to check: utilities are re-summed from scratch and integrals use
/// composite Simpson instead of Gauss-Legendre.
namespace bbl::oracle {

/// Composite Simpson on [a, b] with `intervals` subintervals (rounded up to even).
[[nodiscard]] double simpson(const std::function<double(double)>& f, double a, double b,
                             int intervals);

/// mu(x) recomputed independently; the general family integrates lambda(t)
/// numerically.
[[nodiscard]] double gain_loss(double x, const Preferences& prefs);

/// Total utility sum q u + eta * sum p mu(u - sum q u) by direct summation.
[[nodiscard]] double total_utility(const DiscreteLottery& lottery, const std::vector<double>& q,
                                   const Preferences& prefs);

struct BeliefGridResult {
    std::vector<double> q;
    double utility = 0.0;
    std::size_t evaluated = 0;
};

/// Exhaustive scan of the probability simplex on the lattice with spacing
/// `step` (vertices included). Throws InputError when the lottery has more
/// than 4 states, when step < 0.01, or when 1/step is not an integer.
[[nodiscard]] BeliefGridResult grid_search_beliefs(const DiscreteLottery& lottery,
                                                   const Preferences& prefs, double step);

struct AlphaGridResult {
    double alpha = 0.0;
    double value = 0.0;
    double step = 0.0;
};

/// Dense scan of `objective` on n_points evenly spaced points of [lo, hi]
/// followed by a three-point parabolic refinement around the best point.
/// Throws InputError when n_points < 2001.
[[nodiscard]] AlphaGridResult grid_search_alpha(const std::function<double(double)>& objective,
                                                double lo, double hi, int n_points = 2001);

/// Integral of pdf(z) g(z) over [a, b] by Simpson with 4000 subintervals.
[[nodiscard]] double expect(const ContinuousDistribution& dist,
                            const std::function<double(double)>& g, double a, double b);

/// Upper-tail quantile by bisection on the pdf-integrated CDF.
[[nodiscard]] double upper_quantile(const ContinuousDistribution& dist, double tail);

/// E_f u(r_f + alpha R) via Simpson.
[[nodiscard]] double rational_objective(const Asset& asset, const ConsumptionUtility& utility,
                                        double alpha);

/// Total utility as a function of alpha with optimal beliefs, via Simpson.
/// The belief quantiles are located once, up front.
[[nodiscard]] std::function<double(double)> sophisticated_objective(
    const Asset& asset, const Preferences& prefs, const ConsumptionUtility& utility);

/// Random lottery with 2..max_states states, payoffs uniform on [0, 10] and
/// probabilities from normalized uniforms bounded away from zero.
[[nodiscard]] DiscreteLottery random_lottery(std::mt19937_64& rng, std::size_t max_states = 4);

/// Random linear-family preferences with lambda in [1.1, 4] and
/// eta in [1/lambda, 1], so that 0 <= P* <= 1.
[[nodiscard]] Preferences random_preferences(std::mt19937_64& rng);

}  // namespace bbl::oracle
