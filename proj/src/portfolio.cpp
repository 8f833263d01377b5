#include "bbl/portfolio.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace bbl {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kSearchCap = 200;
constexpr double kDamping = 0.5;
constexpr double kFixedPointTol = 1e-8;
constexpr int kFixedPointCap = 200;
constexpr int kBracketGrid = 40;

double checked(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " is not finite; wealth leaves the utility's domain");
    }
    return v;
}

double interior_cutoff(const Preferences& prefs) {
    if (!prefs.is_linear()) {
        throw InputError("portfolio choice supports only the linear gain-loss function");
    }
    const double p = cutoff_probability(prefs);
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("portfolio choice needs a cutoff probability strictly inside (0, 1); got " +
                         std::to_string(p));
    }
    return p;
}

// Golden-section maximization of f on [lo, hi]; endpoints are compared at the end
// so monotone objectives land on the right corner.
template <class F>
std::pair<double, int> golden_max(F&& f, double lo, double hi) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int it = 0;
    while (it < kSearchCap && b - a > 1e-11 * (1.0 + std::abs(a) + std::abs(b))) {
        ++it;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    double best = f1 >= f2 ? x1 : x2;
    double best_value = std::max(f1, f2);
    for (double end : {lo, hi}) {
        const double v = f(end);
        if (v > best_value) {
            best = end;
            best_value = v;
        }
    }
    return {best, it};
}

struct Regions {
    double cut;      // excess return separating gains from losses
    bool loss_low;   // loss region is [lo, cut] (alpha >= 0) or [cut, hi]
};

Regions regions_at(const Asset& asset, double p_star, double alpha) {
    if (alpha >= 0.0) return {asset.excess.upper_quantile(p_star), true};
    return {asset.excess.upper_quantile(1.0 - p_star), false};
}

template <class G>
double loss_integral(const Asset& asset, const Regions& r, G&& g) {
    const auto& d = asset.excess;
    return r.loss_low ? d.expect(g, d.lo(), r.cut) : d.expect(g, r.cut, d.hi());
}

template <class G>
double gain_integral(const Asset& asset, const Regions& r, G&& g) {
    const auto& d = asset.excess;
    return r.loss_low ? d.expect(g, r.cut, d.hi()) : d.expect(g, d.lo(), r.cut);
}

// Proportional tilt of f on the gain and loss regions that moves the expectation
// of X to X(cut) while keeping unit mass.
struct Tilt {
    double gain = 1.0;
    double loss = 1.0;
};

Tilt tilt_at(const Asset& asset, const ConsumptionUtility& u, double p_star, double alpha,
             const Regions& r) {
    const double target = u(asset.r_f + alpha * r.cut);
    auto dev = [&](double z) { return u(asset.r_f + alpha * z) - target; };
    const double d_gain = gain_integral(asset, r, dev);
    const double d_loss = loss_integral(asset, r, dev);
    const double denom = (1.0 - p_star) * d_gain - p_star * d_loss;
    if (!(std::abs(denom) > 1e-300)) return {};
    return {-d_loss / denom, d_gain / denom};
}

// Subjective expected utility maximizer for fixed beliefs, via bisection on the
// first-order condition (the objective is concave in alpha).
double best_response(const Asset& asset, const ConsumptionUtility& u, const Tilt& t,
                     const Regions& r, const AlphaBounds& b) {
    auto slope = [&](double alpha) {
        auto g = [&](double z) { return u.derivative(asset.r_f + alpha * z) * z; };
        return checked(t.gain * gain_integral(asset, r, g) + t.loss * loss_integral(asset, r, g),
                       "marginal subjective expected utility");
    };
    if (slope(b.hi) >= 0.0) return b.hi;
    if (slope(b.lo) <= 0.0) return b.lo;
    double lo = b.lo, hi = b.hi;
    for (int it = 0; it < kSearchCap; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (slope(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

void fill_belief_fields(PortfolioSolution& s, const Asset& asset, const Preferences& prefs,
                        const ConsumptionUtility& u) {
    const Regions r = regions_at(asset, cutoff_probability(prefs), s.alpha);
    s.belief_expectation = u(asset.r_f + s.alpha * r.cut);
    s.r_ce = s.alpha == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                            : certainty_equivalent_excess(asset, s.alpha, prefs, u);
}

}  // namespace

void check_alpha_bounds(const Asset& asset, const ConsumptionUtility& utility,
                        const AlphaBounds& bounds) {
    if (!std::isfinite(asset.r_f)) throw InputError("r_f must be finite");
    if (!std::isfinite(bounds.lo) || !std::isfinite(bounds.hi) || !(bounds.lo <= bounds.hi)) {
        throw InputError("alpha bounds must be finite with lo <= hi");
    }
    const double floor = utility.domain_floor();
    for (double alpha : {bounds.lo, bounds.hi}) {
        for (double z : {asset.excess.lo(), asset.excess.hi()}) {
            if (!(asset.r_f + alpha * z > floor)) {
                throw DomainError("alpha = " + std::to_string(alpha) +
                                  " makes wealth r_f + alpha*R nonpositive on the support of R");
            }
        }
    }
}

AlphaBounds feasible_alpha_bounds(const Asset& asset, const ConsumptionUtility& utility,
                                  AlphaBounds within, double margin) {
    const double floor = utility.domain_floor();
    if (!std::isfinite(floor)) return within;
    const double room = asset.r_f - floor - margin;
    if (!(room > 0.0)) throw DomainError("r_f leaves no room above the utility's domain floor");
    // r_f + alpha*z >= floor + margin for z in [lo, hi].
    const double zlo = asset.excess.lo(), zhi = asset.excess.hi();
    if (zlo < 0.0) within.hi = std::min(within.hi, room / -zlo);
    if (zhi > 0.0) within.lo = std::max(within.lo, -room / zhi);
    if (!(within.lo <= within.hi)) throw DomainError("no feasible alpha inside the bounds");
    return within;
}

double rational_objective(const Asset& asset, const ConsumptionUtility& utility, double alpha) {
    return asset.excess.expect([&](double z) { return utility(asset.r_f + alpha * z); });
}

double rational_gain_probability(const Asset& asset, const ConsumptionUtility& utility,
                                 double alpha) {
    if (alpha == 0.0) return 1.0;
    const double mean_u = checked(rational_objective(asset, utility, alpha), "expected utility");
    const double r0 = (utility.inverse(mean_u) - asset.r_f) / alpha;
    return alpha > 0.0 ? asset.excess.upper_tail(r0) : asset.excess.cdf(r0);
}

double belief_cutoff_return(const Asset& asset, const Preferences& prefs, double alpha) {
    return regions_at(asset, interior_cutoff(prefs), alpha).cut;
}

double sophisticated_objective(const Asset& asset, const Preferences& prefs,
                               const ConsumptionUtility& utility, double alpha) {
    const Regions r = regions_at(asset, interior_cutoff(prefs), alpha);
    auto x = [&](double z) { return utility(asset.r_f + alpha * z); };
    const double eta = prefs.eta();
    return eta * asset.excess.expect(x) + eta * (prefs.lambda0() - 1.0) * loss_integral(asset, r, x);
}

double loss_region_weighted_return(const Asset& asset, const Preferences& prefs,
                                   const ConsumptionUtility& utility, double alpha) {
    const Regions r = regions_at(asset, interior_cutoff(prefs), alpha);
    return loss_integral(asset, r,
                         [&](double z) { return utility.derivative(asset.r_f + alpha * z) * z; });
}

double certainty_equivalent_excess(const Asset& asset, double alpha, const Preferences& prefs,
                                   const ConsumptionUtility& utility) {
    if (alpha == 0.0) throw InputError("certainty-equivalent excess return is undefined at alpha = 0");
    const double cut = belief_cutoff_return(asset, prefs, alpha);
    const double eg_u = utility(asset.r_f + alpha * cut);
    return (utility.inverse(eg_u) - asset.r_f) / alpha;
}

PortfolioSolution rational_alpha(const Asset& asset, const ConsumptionUtility& utility,
                                 AlphaBounds bounds) {
    check_alpha_bounds(asset, utility, bounds);
    auto objective = [&](double a) {
        return checked(rational_objective(asset, utility, a), "expected utility");
    };
    const auto [alpha, iterations] = golden_max(objective, bounds.lo, bounds.hi);
    PortfolioSolution s;
    s.alpha = alpha;
    s.value = objective(alpha);
    s.belief_expectation = s.value;
    s.r_ce = alpha == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : (utility.inverse(s.value) - asset.r_f) / alpha;
    s.iterations = iterations;
    return s;
}

PortfolioSolution naive_alpha(const Asset& asset, const Preferences& prefs,
                              const ConsumptionUtility& utility, AlphaBounds bounds) {
    const double p_star = interior_cutoff(prefs);
    check_alpha_bounds(asset, utility, bounds);
    const double alpha_re = rational_alpha(asset, utility, bounds).alpha;

    std::vector<double> starts;
    for (double s : {alpha_re, std::clamp(-alpha_re, bounds.lo, bounds.hi), bounds.lo, bounds.hi}) {
        bool seen = false;
        for (double t : starts) seen = seen || t == s;
        if (!seen) starts.push_back(s);
    }

    PortfolioSolution best;
    bool have_best = false;
    PortfolioSolution fallback;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        double alpha = starts[k];
        bool converged = false;
        int it = 0;
        while (it < kFixedPointCap) {
            ++it;
            const Regions r = regions_at(asset, p_star, alpha);
            const Tilt t = tilt_at(asset, utility, p_star, alpha, r);
            const double br = best_response(asset, utility, t, r, bounds);
            const double next = alpha + kDamping * (br - alpha);
            const double step = std::abs(next - alpha);
            alpha = next;
            if (step <= kFixedPointTol) {
                converged = true;
                break;
            }
        }
        PortfolioSolution s;
        s.alpha = alpha;
        s.value = sophisticated_objective(asset, prefs, utility, alpha);
        s.converged = converged;
        s.iterations = it;
        if (k == 0) fallback = s;
        if (!converged) continue;
        const bool better = !have_best || s.value > best.value + 1e-12 ||
                            (std::abs(s.value - best.value) <= 1e-12 && s.alpha < best.alpha);
        if (better) {
            best = s;
            have_best = true;
        }
    }
    PortfolioSolution out = have_best ? best : fallback;
    fill_belief_fields(out, asset, prefs, utility);
    return out;
}

PortfolioSolution sophisticated_alpha(const Asset& asset, const Preferences& prefs,
                                      const ConsumptionUtility& utility, AlphaBounds bounds) {
    interior_cutoff(prefs);
    check_alpha_bounds(asset, utility, bounds);
    auto objective = [&](double a) {
        return checked(sophisticated_objective(asset, prefs, utility, a), "total utility");
    };

    // V is concave on each sign of alpha; bracket on a coarse grid, then refine.
    auto solve_region = [&](double lo, double hi) {
        double best_x = lo;
        double best_v = objective(lo);
        const double h = (hi - lo) / kBracketGrid;
        for (int i = 1; i <= kBracketGrid; ++i) {
            const double x = i == kBracketGrid ? hi : lo + i * h;
            const double v = objective(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
        const double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
        auto [x, it] = golden_max(objective, a, b);
        return std::pair<double, int>{x, it};
    };

    std::vector<std::pair<double, int>> candidates;
    if (bounds.lo < 0.0) candidates.push_back(solve_region(bounds.lo, std::min(0.0, bounds.hi)));
    if (bounds.hi > 0.0) candidates.push_back(solve_region(std::max(0.0, bounds.lo), bounds.hi));
    if (candidates.empty()) candidates.push_back({0.0, 0});

    PortfolioSolution out;
    bool have = false;
    for (const auto& [x, it] : candidates) {
        const double v = objective(x);
        if (!have || v > out.value + 1e-12 || (std::abs(v - out.value) <= 1e-12 && x < out.alpha)) {
            out.alpha = x;
            out.value = v;
            out.iterations = it;
            have = true;
        }
    }
    fill_belief_fields(out, asset, prefs, utility);
    return out;
}

}  // namespace bbl
