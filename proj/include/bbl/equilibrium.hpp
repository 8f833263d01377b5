#pragma once

#include "bbl/distribution.hpp"
#include "bbl/preferences.hpp"

#include <string>
#include <vector>

namespace bbl {

/// Prices of a risky asset with payoff R held by homogeneous investors with
/// linear consumption utility, a zero risk-free rate and no short sales.
struct EquilibriumPoint {
    double p_star = 0.0;
    double eta = 0.0;
    double pi_rational = 0.0;
    double pi_naive = 0.0;
    double pi_sophisticated = 0.0;
};

[[nodiscard]] double rational_price(const ContinuousDistribution& dist, const Preferences& prefs);
/// eta * a, where a is the subjective expectation of R at P*.
[[nodiscard]] double naive_price(const ContinuousDistribution& dist, const Preferences& prefs);
/// eta * E_f(R) + eta * (lambda - 1) * integral of f(R) R below a.
[[nodiscard]] double sophisticated_price(const ContinuousDistribution& dist,
                                         const Preferences& prefs);

/// Prices at a given cutoff, with eta implied by p_star at fixed lambda.
[[nodiscard]] EquilibriumPoint equilibrium_point(const ContinuousDistribution& dist,
                                                 double lambda0, double p_star);

/// Inclusive grid start, start+step, ... up to end (within half a step).
/// Throws InputError on a nonpositive step or end < start.
[[nodiscard]] std::vector<double> make_grid(double start, double end, double step);
/// Parses "start:end:step".
[[nodiscard]] std::vector<double> parse_grid(const std::string& text);

/// One point per grid value, ordered as the grid. Grid values must lie in (0, 1).
[[nodiscard]] std::vector<EquilibriumPoint> sweep(const ContinuousDistribution& dist,
                                                  double lambda0,
                                                  const std::vector<double>& p_star_grid);

struct SweepThresholds {
    /// P* at which the subjective expectation a(P*) crosses zero.
    double naive_zero = 0.0;
    /// P* at which the partial expectation below a(P*) crosses zero; the
    /// sophisticated price equals the rational one there.
    double sophisticated_crossing = 0.0;
    /// Grid P* with the lowest sophisticated price.
    double sophisticated_argmin = 0.0;
};

/// Thresholds of a sweep. Entries are NaN when no crossing exists.
[[nodiscard]] SweepThresholds sweep_thresholds(const ContinuousDistribution& dist,
                                               const std::vector<EquilibriumPoint>& points);

/// Total utility of a sophisticated investor buying alpha units at `price`,
/// payoff alpha*(R - price), with optimal beliefs, by direct quadrature.
/// At the sophisticated equilibrium price this is zero for every alpha in [0, 1].
[[nodiscard]] double sophisticated_holding_value(const ContinuousDistribution& dist,
                                                 const Preferences& prefs, double price,
                                                 double alpha);

/// CSV with header p_star,eta,pi_rational,pi_naive,pi_sophisticated and values
/// at 10 significant digits.
[[nodiscard]] std::string to_csv(const std::vector<EquilibriumPoint>& points);

}  // namespace bbl
