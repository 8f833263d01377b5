#include "bbl/preferences.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <string>

namespace bbl {

Preferences::Preferences(double eta, double lambda0, double gamma, GainLossSpec gain_loss)
    : eta_(eta), lambda0_(lambda0), gamma_(gamma), gain_loss_(gain_loss) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InputError("eta must lie in (0, 1], got " + std::to_string(eta));
    }
    if (!(lambda0 > 1.0) || !std::isfinite(lambda0)) {
        throw InputError("lambda must be finite and > 1, got " + std::to_string(lambda0));
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InputError("gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
    if (gain_loss_.kind == GainLossKind::GeneralConstantMarginal) {
        if (!(gain_loss_.beta > 0.0) || !std::isfinite(gain_loss_.beta)) {
            throw InputError("gain_loss.beta must be positive");
        }
        if (!(gain_loss_.kappa > 0.0) || !std::isfinite(gain_loss_.kappa)) {
            throw InputError("gain_loss.kappa must be positive");
        }
        if (!(eta * gain_loss_.beta < 1.0)) {
            throw InputError("general gain-loss requires eta * beta < 1");
        }
    }
}

Preferences Preferences::with_gamma(double gamma) const {
    return Preferences(eta_, lambda0_, gamma, gain_loss_);
}

double cutoff_probability(double eta, double lambda0) {
    return (eta * lambda0 - 1.0) / (eta * (lambda0 - 1.0));
}

double cutoff_probability(const Preferences& prefs) {
    return cutoff_probability(prefs.eta(), prefs.lambda0());
}

double eta_for_cutoff(double p_star, double lambda0) {
    if (!(p_star >= 0.0 && p_star <= 1.0)) {
        throw InputError("p_star must lie in [0, 1]");
    }
    if (!(lambda0 > 1.0)) {
        throw InputError("lambda must be > 1");
    }
    return 1.0 / (lambda0 - p_star * (lambda0 - 1.0));
}

double loss_aversion_at(double x, const Preferences& prefs) {
    const auto& gl = prefs.gain_loss();
    if (gl.kind == GainLossKind::Linear) {
        return prefs.lambda0();
    }
    // 1 - exp(-kappa x) via expm1 keeps precision near x = 0.
    return 1.0 + (prefs.lambda0() - 1.0) * (-std::expm1(-gl.kappa * x));
}

double gain_loss(double x, const Preferences& prefs) {
    const auto& gl = prefs.gain_loss();
    if (gl.kind == GainLossKind::Linear) {
        return x >= 0.0 ? x : prefs.lambda0() * x;
    }
    if (x >= 0.0) {
        return gl.beta * x;
    }
    const double y = -x;
    const double ramp = -std::expm1(-gl.kappa * y) / gl.kappa;  // integral_0^y (1 - e^{-kappa t}) dt = y - ramp
    return -gl.beta * (y + (prefs.lambda0() - 1.0) * (y - ramp));
}

}  // namespace bbl
