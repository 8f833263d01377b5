#include "bbl/oracles.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <limits>

namespace bbl::oracle {

namespace {

constexpr int kSimpsonIntervals = 4000;

void compositions(int total, std::size_t parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& visit) {
    if (cur.size() + 1 == parts) {
        cur.push_back(total);
        visit(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(total - k, parts, cur, visit);
        cur.pop_back();
    }
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (!(b > a)) return 0.0;
    const int n = intervals < 2 ? 2 : intervals + intervals % 2;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; ++i) {
        (i % 2 ? odd : even) += f(a + i * h);
    }
    return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

double gain_loss(double x, const Preferences& prefs) {
    const auto& gl = prefs.gain_loss();
    if (gl.kind == GainLossKind::Linear) return x >= 0.0 ? x : prefs.lambda0() * x;
    if (x >= 0.0) return gl.beta * x;
    auto lam = [&](double t) { return 1.0 + (prefs.lambda0() - 1.0) * (1.0 - std::exp(-gl.kappa * t)); };
    // Resolve the fast exponential near zero with its own panel.
    const double y = -x;
    const double knee = std::min(y, 40.0 / gl.kappa);
    const double area = simpson(lam, 0.0, knee, 2000) + simpson(lam, knee, y, 2000);
    return -gl.beta * area;
}

double total_utility(const DiscreteLottery& lottery, const std::vector<double>& q,
                     const Preferences& prefs) {
    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    if (q.size() != u.size()) throw InputError("belief vector length does not match the lottery");
    double eg = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) eg += q[s] * u[s];
    double gl = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) gl += p[s] * oracle::gain_loss(u[s] - eg, prefs);
    return eg + prefs.eta() * gl;
}

BeliefGridResult grid_search_beliefs(const DiscreteLottery& lottery, const Preferences& prefs,
                                     double step) {
    const std::size_t states = lottery.size();
    if (states > 4) throw InputError("simplex grid search is limited to 4 states");
    if (!(step >= 0.01) || !(step <= 1.0)) throw InputError("grid step must lie in [0.01, 1]");
    const int n = static_cast<int>(std::lround(1.0 / step));
    if (std::abs(n * step - 1.0) > 1e-9) throw InputError("1/step must be an integer");

    BeliefGridResult best;
    best.utility = -std::numeric_limits<double>::infinity();
    std::vector<int> cur;
    std::vector<double> q(states);
    compositions(n, states, cur, [&](const std::vector<int>& counts) {
        for (std::size_t s = 0; s < states; ++s) q[s] = static_cast<double>(counts[s]) / n;
        const double v = total_utility(lottery, q, prefs);
        ++best.evaluated;
        if (v > best.utility) {
            best.utility = v;
            best.q = q;
        }
    });
    return best;
}

AlphaGridResult grid_search_alpha(const std::function<double(double)>& objective, double lo,
                                  double hi, int n_points) {
    if (n_points < 2001) throw InputError("alpha grid needs at least 2001 points");
    if (!(hi > lo)) throw InputError("alpha grid needs lo < hi");
    const double h = (hi - lo) / (n_points - 1);
    std::vector<double> values(static_cast<std::size_t>(n_points));
    int best = 0;
    for (int i = 0; i < n_points; ++i) {
        values[static_cast<std::size_t>(i)] = objective(i == n_points - 1 ? hi : lo + i * h);
        if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
    }
    AlphaGridResult out{best == n_points - 1 ? hi : lo + best * h, values[static_cast<std::size_t>(best)], h};
    if (best > 0 && best < n_points - 1) {
        const double f0 = values[static_cast<std::size_t>(best - 1)];
        const double f1 = values[static_cast<std::size_t>(best)];
        const double f2 = values[static_cast<std::size_t>(best + 1)];
        const double curv = f0 - 2.0 * f1 + f2;
        if (curv < 0.0) {
            const double x = out.alpha + 0.5 * h * (f0 - f2) / curv;
            const double v = objective(x);
            if (v > out.value) {
                out.alpha = x;
                out.value = v;
            }
        }
    }
    return out;
}

double expect(const ContinuousDistribution& dist, const std::function<double(double)>& g, double a,
              double b) {
    a = std::max(a, dist.lo());
    b = std::min(b, dist.hi());
    return simpson([&](double z) { return dist.pdf(z) * g(z); }, a, b, kSimpsonIntervals);
}

double upper_quantile(const ContinuousDistribution& dist, double tail) {
    if (!(tail > 0.0 && tail < 1.0)) throw InputError("tail mass must lie in (0, 1)");
    auto upper = [&](double z) { return expect(dist, [](double) { return 1.0; }, z, dist.hi()); };
    double lo = dist.lo(), hi = dist.hi();
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (upper(mid) > tail ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rational_objective(const Asset& asset, const ConsumptionUtility& utility, double alpha) {
    return expect(asset.excess, [&](double z) { return utility(asset.r_f + alpha * z); },
                  asset.excess.lo(), asset.excess.hi());
}

std::function<double(double)> sophisticated_objective(const Asset& asset,
                                                     const Preferences& prefs,
                                                     const ConsumptionUtility& utility) {
    const double p_star = (prefs.eta() * prefs.lambda0() - 1.0) / (prefs.eta() * (prefs.lambda0() - 1.0));
    const double cut_long = upper_quantile(asset.excess, p_star);
    const double cut_short = upper_quantile(asset.excess, 1.0 - p_star);
    return [=](double alpha) {
        const auto& d = asset.excess;
        auto x = [&](double z) { return utility(asset.r_f + alpha * z); };
        double loss = 0.0;
        if (alpha > 0.0) {
            loss = expect(d, x, d.lo(), cut_long);
        } else if (alpha < 0.0) {
            loss = expect(d, x, cut_short, d.hi());
        } else {
            loss = (1.0 - p_star) * utility(asset.r_f);
        }
        return prefs.eta() * (expect(d, x, d.lo(), d.hi()) + (prefs.lambda0() - 1.0) * loss);
    };
}

DiscreteLottery random_lottery(std::mt19937_64& rng, std::size_t max_states) {
    std::uniform_int_distribution<std::size_t> count(2, std::max<std::size_t>(2, max_states));
    std::uniform_real_distribution<double> payoff(0.0, 10.0);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    for (;;) {
        const std::size_t n = count(rng);
        std::vector<double> z(n), p(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = payoff(rng);
            p[i] = weight(rng);
            total += p[i];
        }
        for (double& v : p) v /= total;
        DiscreteLottery lottery(z, p);
        if (lottery.size() >= 2) return lottery;
    }
}

Preferences random_preferences(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lambda = 1.1 + 2.9 * unit(rng);
    const double eta = 1.0 / lambda + (1.0 - 1.0 / lambda) * unit(rng);
    return Preferences(std::min(eta, 1.0), lambda);
}

}  // namespace bbl::oracle
