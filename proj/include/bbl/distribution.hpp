#pragma once

#include "bbl/quadrature.hpp"

#include <algorithm>
#include <variant>
#include <vector>

namespace bbl {

struct NormalSpec {
    double mean = 0.0;
    double sd = 1.0;
};

struct MixtureComponent {
    double weight = 1.0;
    double mean = 0.0;
    double sd = 1.0;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
};

/// Piecewise-linear density through (z_i, f_i), zero outside [z_0, z_n].
struct TabulatedSpec {
    std::vector<double> z;
    std::vector<double> f;
};

using DistributionSpec = std::variant<NormalSpec, MixtureSpec, TabulatedSpec>;

/// A continuous payoff distribution on an effective interval [lo, hi].
///
/// Normal and mixture supports are truncated at 8 standard deviations around
/// each component, which drops less than 1e-15 of tail mass. Tabulated
/// densities are renormalized to unit mass on construction. Expectations over
/// sub-intervals go through composite Gauss-Legendre quadrature, split at the
/// tabulation nodes.
class ContinuousDistribution {
public:
    static ContinuousDistribution normal(double mean, double sd);
    static ContinuousDistribution mixture(std::vector<MixtureComponent> components);
    static ContinuousDistribution tabulated(std::vector<double> z, std::vector<double> f);
    /// Uniform density on [lo, hi], stored as a two-node table.
    static ContinuousDistribution uniform(double lo, double hi);

    [[nodiscard]] const DistributionSpec& spec() const { return spec_; }
    [[nodiscard]] double lo() const { return lo_; }
    [[nodiscard]] double hi() const { return hi_; }
    [[nodiscard]] const QuadratureConfig& quadrature() const { return quad_; }
    [[nodiscard]] ContinuousDistribution with_quadrature(QuadratureConfig cfg) const;

    [[nodiscard]] double pdf(double z) const;
    [[nodiscard]] double cdf(double z) const;
    /// 1 - cdf(z), computed without cancellation for the normal families.
    [[nodiscard]] double upper_tail(double z) const;
    /// Exact mean of the (untruncated) distribution.
    [[nodiscard]] double mean() const;

    /// The point a with upper_tail(a) = tail, by bisection on [lo, hi].
    /// Throws InputError unless 0 < tail < 1.
    [[nodiscard]] double upper_quantile(double tail) const;

    /// Closed-form integral of f(z) z over (-inf, a].
    [[nodiscard]] double partial_expectation_exact(double a) const;

    /// Integral of f(z) g(z) over [a, b] intersected with the support.
    template <class G>
    [[nodiscard]] double expect(G&& g, double a, double b) const {
        a = std::max(a, lo_);
        b = std::min(b, hi_);
        if (!(b > a)) return 0.0;
        auto integrand = [&](double z) { return pdf(z) * g(z); };
        double total = 0.0;
        double left = a;
        for (double node : breakpoints_) {
            if (node <= left || node >= b) continue;
            total += integrate(integrand, left, node, quad_);
            left = node;
        }
        return total + integrate(integrand, left, b, quad_);
    }

    template <class G>
    [[nodiscard]] double expect(G&& g) const {
        return expect(std::forward<G>(g), lo_, hi_);
    }

private:
    explicit ContinuousDistribution(DistributionSpec spec);

    DistributionSpec spec_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<double> cumulative_;  // tabulated only: cdf at each node
    QuadratureConfig quad_;
};

}  // namespace bbl
