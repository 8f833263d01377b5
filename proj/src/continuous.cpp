#include "bbl/continuous.hpp"

#include "bbl/errors.hpp"

#include <cmath>

namespace bbl {

namespace {

double interior_cutoff(const Preferences& prefs) {
    if (!prefs.is_linear()) {
        throw InputError("continuous lotteries support only the linear gain-loss function");
    }
    const double p_star = cutoff_probability(prefs);
    if (!(p_star > 0.0 && p_star < 1.0)) {
        throw InputError("cutoff probability must lie strictly inside (0, 1) for continuous "
                         "lotteries; got " + std::to_string(p_star));
    }
    return p_star;
}

}  // namespace

double subjective_expectation(const ContinuousDistribution& dist, double p_star) {
    return dist.upper_quantile(p_star);
}

double partial_expectation(const ContinuousDistribution& dist, double a) {
    if (!std::isfinite(a)) throw InputError("partial expectation bound must be finite");
    const double v = dist.expect([](double z) { return z; }, dist.lo(), a);
    if (!std::isfinite(v)) throw NumericalError("partial expectation quadrature failed");
    return v;
}

double naive_value(const ContinuousDistribution& dist, const Preferences& prefs) {
    return subjective_expectation(dist, interior_cutoff(prefs));
}

double sophisticated_value(const ContinuousDistribution& dist, const Preferences& prefs) {
    const double a = subjective_expectation(dist, interior_cutoff(prefs));
    const double eta = prefs.eta();
    return eta * dist.mean() + eta * (prefs.lambda0() - 1.0) * partial_expectation(dist, a);
}

LotteryComparison compare(const ContinuousDistribution& a, const ContinuousDistribution& b,
                          const Preferences& prefs, AgentKind kind) {
    LotteryComparison out;
    if (kind == AgentKind::Naive) {
        out.value_a = naive_value(a, prefs);
        out.value_b = naive_value(b, prefs);
    } else {
        out.value_a = sophisticated_value(a, prefs);
        out.value_b = sophisticated_value(b, prefs);
    }
    const double diff = out.value_a - out.value_b;
    if (diff > out.tolerance) {
        out.verdict = LotteryPreference::PreferA;
    } else if (diff < -out.tolerance) {
        out.verdict = LotteryPreference::PreferB;
    }
    return out;
}

const char* to_string(LotteryPreference pref) {
    switch (pref) {
        case LotteryPreference::PreferA: return "prefer_a";
        case LotteryPreference::PreferB: return "prefer_b";
        case LotteryPreference::Indifferent: return "indifferent";
    }
    return "indifferent";
}

const char* to_string(AgentKind kind) {
    return kind == AgentKind::Naive ? "naive" : "sophisticated";
}

}  // namespace bbl
