#include "bbl/lottery.hpp"

#include "bbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bbl {

namespace {

// Gain masses within this distance of P* are treated as equal to it.
constexpr double kTieTol = 1e-12;

double expectation_of(std::span<const double> q, std::span<const double> u) {
    double e = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) e += q[s] * u[s];
    return e;
}

// U as a function of the subjective expectation alone.
double utility_at_expectation(const DiscreteLottery& lottery, const Preferences& prefs, double e) {
    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    double gl = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) gl += p[s] * gain_loss(u[s] - e, prefs);
    return e + prefs.eta() * gl;
}

std::vector<double> two_point_blend(std::size_t n, std::span<const double> u, double target) {
    std::vector<double> q(n, 0.0);
    const double span = u.back() - u.front();
    const double theta = span > 0.0 ? std::clamp((target - u.front()) / span, 0.0, 1.0) : 1.0;
    q.front() += 1.0 - theta;
    q.back() += theta;
    return q;
}

BeliefSolution make_solution(const DiscreteLottery& lottery, const Preferences& prefs,
                             double expectation, ExpectationInterval interval) {
    BeliefSolution sol;
    sol.q = canonical_beliefs(lottery, expectation);
    sol.subjective_expectation = expectation;
    sol.gain_mass = gain_probability(lottery, expectation);
    sol.total_utility = total_utility(lottery, sol.q, prefs);
    sol.expectation_interval = interval;
    return sol;
}

void require_two_states(const DiscreteLottery& lottery) {
    if (lottery.size() < 2) {
        throw InputError("belief solvers need at least two distinct payoffs");
    }
}

}  // namespace

DiscreteLottery::DiscreteLottery(std::vector<double> payoffs, std::vector<double> probs,
                                 ConsumptionUtility utility)
    : utility_(utility) {
    if (payoffs.empty()) throw InputError("lottery needs at least one state");
    if (payoffs.size() != probs.size()) {
        throw InputError("payoffs and probs have different lengths");
    }
    double total = 0.0;
    for (std::size_t s = 0; s < payoffs.size(); ++s) {
        if (!std::isfinite(payoffs[s])) throw InputError("payoffs must be finite");
        if (!(probs[s] > 0.0) || !std::isfinite(probs[s])) {
            throw InputError("probs must be strictly positive, got " + std::to_string(probs[s]));
        }
        total += probs[s];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InputError("probs must sum to 1 (sum = " + std::to_string(total) + ")");
    }

    std::vector<std::size_t> order(payoffs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return payoffs[a] < payoffs[b]; });
    for (std::size_t idx : order) {
        if (!payoffs_.empty() && payoffs_.back() == payoffs[idx]) {
            probs_.back() += probs[idx];
        } else {
            payoffs_.push_back(payoffs[idx]);
            probs_.push_back(probs[idx]);
        }
    }

    utilities_.reserve(payoffs_.size());
    for (double z : payoffs_) {
        const double v = utility_(z);
        if (!std::isfinite(v)) {
            throw InputError("payoff " + std::to_string(z) + " is outside the utility domain");
        }
        utilities_.push_back(v);
    }
}

double DiscreteLottery::rational_expectation() const {
    return expectation_of(probs_, utilities_);
}

double total_utility(const DiscreteLottery& lottery, std::span<const double> q,
                     const Preferences& prefs) {
    if (q.size() != lottery.size()) {
        throw InputError("belief vector has " + std::to_string(q.size()) + " entries, lottery has " +
                         std::to_string(lottery.size()));
    }
    double sum = 0.0;
    for (double v : q) {
        if (!std::isfinite(v) || v < -1e-12) throw InputError("beliefs must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("beliefs must sum to 1");
    return utility_at_expectation(lottery, prefs, expectation_of(q, lottery.utilities()));
}

double rational_utility(const DiscreteLottery& lottery, const Preferences& prefs) {
    return total_utility(lottery, lottery.probs(), prefs);
}

double gain_probability(const DiscreteLottery& lottery, double expectation) {
    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    double mass = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) {
        if (u[s] >= expectation) mass += p[s];
    }
    return mass;
}

std::vector<double> canonical_beliefs(const DiscreteLottery& lottery, double target) {
    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    const std::size_t n = lottery.size();
    const double slack = 1e-12 * (1.0 + std::max(std::abs(u.front()), std::abs(u.back())));
    if (!(target >= u.front() - slack && target <= u.back() + slack)) {
        throw InputError("target expectation lies outside [u_1, u_S]");
    }
    target = std::clamp(target, u.front(), u.back());
    if (n == 1) return {1.0};

    // Tilt: q = c_gain * p on {u >= target}, c_loss * p below, with
    // sum q = 1 and sum q (u - target) = 0.
    double p_gain = 0.0, p_loss = 0.0, d_gain = 0.0, d_loss = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double d = u[s] - target;
        if (d >= 0.0) {
            p_gain += p[s];
            d_gain += p[s] * d;
        } else {
            p_loss += p[s];
            d_loss += p[s] * d;
        }
    }
    const double denom = p_loss * d_gain - p_gain * d_loss;
    if (p_loss == 0.0 || !(denom > 0.0)) return two_point_blend(n, u, target);
    const double c_gain = -d_loss / denom;
    const double c_loss = d_gain / denom;
    if (!(c_gain >= 0.0 && c_loss >= 0.0)) return two_point_blend(n, u, target);

    std::vector<double> q(n);
    for (std::size_t s = 0; s < n; ++s) q[s] = (u[s] >= target ? c_gain : c_loss) * p[s];
    return q;
}

BeliefSolution solve_optimal_beliefs(const DiscreteLottery& lottery, const Preferences& prefs) {
    if (!prefs.is_linear()) return general_residual_solve(lottery, prefs);
    require_two_states(lottery);

    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    const std::size_t n = lottery.size();
    const double p_star = cutoff_probability(prefs);

    // tail[k] = gain mass on the open segment (u_{k-1}, u_k).
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) tail[k] = tail[k + 1] + p[k];

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double excess = tail[k + 1] - p_star;
        if (excess > kTieTol) continue;
        if (excess >= -kTieTol) return make_solution(lottery, prefs, u[k], {u[k], u[k + 1]});
        return make_solution(lottery, prefs, u[k], {u[k], u[k]});
    }
    return make_solution(lottery, prefs, u[n - 1], {u[n - 1], u[n - 1]});
}

double general_residual(const DiscreteLottery& lottery, const Preferences& prefs,
                        double expectation) {
    const auto u = lottery.utilities();
    const auto p = lottery.probs();
    const double eb = prefs.eta() * prefs.gain_loss().beta;
    const double kappa = prefs.gain_loss().kappa;
    double acc = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) {
        const double x = expectation - u[s];
        if (!(x > 0.0)) continue;
        const double excess_aversion = prefs.is_linear()
                                           ? prefs.lambda0() - 1.0
                                           : (prefs.lambda0() - 1.0) * (-std::expm1(-kappa * x));
        acc += p[s] * excess_aversion;
    }
    return acc - (1.0 - eb) / eb;
}

BeliefSolution general_residual_solve(const DiscreteLottery& lottery, const Preferences& prefs) {
    require_two_states(lottery);
    const double eb = prefs.eta() * prefs.gain_loss().beta;
    if (!(eb < 1.0)) throw InputError("general residual solve requires eta * beta < 1");

    const auto u = lottery.utilities();
    const std::size_t n = lottery.size();
    auto residual = [&](double e) { return general_residual(lottery, prefs, e); };

    std::vector<double> candidates{u.front(), u.back()};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double lo = u[k], hi = u[k + 1];
        double r_lo = residual(lo), r_hi = residual(hi);
        if (r_lo == 0.0) {
            candidates.push_back(lo);
            continue;
        }
        if (std::signbit(r_lo) == std::signbit(r_hi) && r_hi != 0.0) continue;
        const bool rising = r_lo < 0.0;
        for (int it = 0; it < 400; ++it) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            const double r_mid = residual(mid);
            if (r_mid == 0.0) {
                lo = hi = mid;
                r_lo = r_hi = 0.0;
                break;
            }
            if ((r_mid < 0.0) == rising) {
                lo = mid;
                r_lo = r_mid;
            } else {
                hi = mid;
                r_hi = r_mid;
            }
        }
        candidates.push_back(std::abs(r_lo) <= std::abs(r_hi) ? lo : hi);
    }

    std::sort(candidates.begin(), candidates.end());
    double best = candidates.front();
    double best_value = utility_at_expectation(lottery, prefs, best);
    for (double e : candidates) {
        const double v = utility_at_expectation(lottery, prefs, e);
        if (v > best_value) {
            best = e;
            best_value = v;
        }
    }
    return make_solution(lottery, prefs, best, {best, best});
}

double general_two_state_cutoff(const Preferences& prefs, double spread) {
    const double eb = prefs.eta() * prefs.gain_loss().beta;
    const double lam = loss_aversion_at(spread, prefs);
    return (eb * lam - 1.0) / (eb * (lam - 1.0));
}

}  // namespace bbl
