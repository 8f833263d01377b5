#include "bbl/equilibrium.hpp"

#include "bbl/continuous.hpp"
#include "bbl/errors.hpp"
#include "bbl/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bbl {

double rational_price(const ContinuousDistribution& dist, const Preferences& prefs) {
    return prefs.eta() * dist.mean();
}

double naive_price(const ContinuousDistribution& dist, const Preferences& prefs) {
    return prefs.eta() * naive_value(dist, prefs);
}

double sophisticated_price(const ContinuousDistribution& dist, const Preferences& prefs) {
    return sophisticated_value(dist, prefs);
}

EquilibriumPoint equilibrium_point(const ContinuousDistribution& dist, double lambda0,
                                   double p_star) {
    if (!(p_star > 0.0 && p_star < 1.0)) {
        throw InputError("sweep cutoff probabilities must lie strictly inside (0, 1)");
    }
    const Preferences prefs(eta_for_cutoff(p_star, lambda0), lambda0);
    EquilibriumPoint pt;
    pt.p_star = p_star;
    pt.eta = prefs.eta();
    pt.pi_rational = rational_price(dist, prefs);
    pt.pi_naive = naive_price(dist, prefs);
    pt.pi_sophisticated = sophisticated_price(dist, prefs);
    return pt;
}

std::vector<double> make_grid(double start, double end, double step) {
    if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step)) {
        throw InputError("grid values must be finite");
    }
    if (!(step > 0.0)) throw InputError("grid step must be positive");
    if (end < start) throw InputError("grid end must not precede its start");
    const auto n = static_cast<long>(std::floor((end - start) / step + 0.5));
    if (n > 10'000'000) throw InputError("grid has too many points");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

std::vector<double> parse_grid(const std::string& text) {
    double v[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t colon = text.find(':', pos);
        if ((i < 2) == (colon == std::string::npos)) {
            throw InputError("grid must have the form start:end:step, got '" + text + "'");
        }
        const std::string part = text.substr(pos, i < 2 ? colon - pos : std::string::npos);
        v[i] = parse_number(part, "grid");
        pos = colon + 1;
    }
    return make_grid(v[0], v[1], v[2]);
}

std::vector<EquilibriumPoint> sweep(const ContinuousDistribution& dist, double lambda0,
                                    const std::vector<double>& p_star_grid) {
    std::vector<EquilibriumPoint> out;
    out.reserve(p_star_grid.size());
    for (double p : p_star_grid) out.push_back(equilibrium_point(dist, lambda0, p));
    return out;
}

SweepThresholds sweep_thresholds(const ContinuousDistribution& dist,
                                 const std::vector<EquilibriumPoint>& points) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SweepThresholds t{nan, nan, nan};
    if (dist.lo() < 0.0 && dist.hi() > 0.0) t.naive_zero = dist.upper_tail(0.0);

    // The partial expectation is smallest at a = 0 and tends to the mean as a
    // grows, so it has a zero above 0 exactly when the mean is positive.
    const double left = std::max(0.0, dist.lo());
    if (partial_expectation(dist, left) < 0.0 && dist.mean() > 0.0) {
        double lo = left, hi = dist.hi();
        for (int it = 0; it < 200; ++it) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            if (partial_expectation(dist, mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        t.sophisticated_crossing = dist.upper_tail(lo + 0.5 * (hi - lo));
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : points) {
        if (pt.pi_sophisticated < best) {
            best = pt.pi_sophisticated;
            t.sophisticated_argmin = pt.p_star;
        }
    }
    return t;
}

double sophisticated_holding_value(const ContinuousDistribution& dist, const Preferences& prefs,
                                   double price, double alpha) {
    if (alpha == 0.0) return 0.0;
    const double p_star = cutoff_probability(prefs);
    const double cut = dist.upper_quantile(alpha > 0.0 ? p_star : 1.0 - p_star);
    auto x = [&](double z) { return alpha * (z - price); };
    const double whole = dist.expect(x);
    const double loss = alpha > 0.0 ? dist.expect(x, dist.lo(), cut) : dist.expect(x, cut, dist.hi());
    return prefs.eta() * whole + prefs.eta() * (prefs.lambda0() - 1.0) * loss;
}

std::string to_csv(const std::vector<EquilibriumPoint>& points) {
    std::ostringstream os;
    os << "p_star,eta,pi_rational,pi_naive,pi_sophisticated\n";
    for (const auto& p : points) {
        os << format_number(p.p_star) << ',' << format_number(p.eta) << ','
           << format_number(p.pi_rational) << ',' << format_number(p.pi_naive) << ','
           << format_number(p.pi_sophisticated) << '\n';
    }
    return os.str();
}

}  // namespace bbl
