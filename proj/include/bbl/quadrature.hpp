#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace bbl {

/// Composite Gauss-Legendre settings. Panels are doubled from `panels` until
/// two successive estimates agree to abs_tol (or to 1e-14 relative), capped at
/// max_panels.
struct QuadratureConfig {
    int panels = 4;
    double abs_tol = 1e-12;
    int max_panels = 1 << 14;
};

inline constexpr std::size_t kGaussOrder = 20;

struct GaussRule {
    std::array<double, kGaussOrder> nodes;
    std::array<double, kGaussOrder> weights;
};

/// 20-point Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre_rule();

template <class F>
double gauss_legendre(F&& f, double a, double b, int panels) {
    const GaussRule& rule = gauss_legendre_rule();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double mid = a + (k + 0.5) * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < kGaussOrder; ++i) {
            panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        }
        total += 0.5 * h * panel;
    }
    return total;
}

/// Integral of f over [a, b]. Returns NaN when the integrand is not finite
/// somewhere on the nodes.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    if (!(b > a)) return 0.0;
    int n = cfg.panels > 0 ? cfg.panels : 1;
    double coarse = gauss_legendre(f, a, b, n);
    if (!std::isfinite(coarse)) return coarse;
    while (n < cfg.max_panels) {
        n *= 2;
        const double fine = gauss_legendre(f, a, b, n);
        if (!std::isfinite(fine)) return fine;
        const double tol = std::max(cfg.abs_tol, 1e-14 * std::abs(fine));
        if (std::abs(fine - coarse) <= tol) return fine;
        coarse = fine;
    }
    return coarse;
}

}  // namespace bbl
