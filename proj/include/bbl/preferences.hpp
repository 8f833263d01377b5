#pragma once

namespace bbl {

enum class GainLossKind { Linear, GeneralConstantMarginal };

/// Shape of the universal gain-loss function mu.
///
/// Linear: mu(x) = x for gains and lambda0 * x for losses.
/// GeneralConstantMarginal: mu'(x) = beta on gains and mu'(-x) = beta * lambda(x)
/// on losses, with lambda(x) = 1 + (lambda0 - 1) * (1 - exp(-kappa * x)).
struct GainLossSpec {
    GainLossKind kind = GainLossKind::Linear;
    double beta = 1.0;
    double kappa = 1.0;

    static GainLossSpec linear() { return {}; }
    static GainLossSpec general(double beta, double kappa) {
        return {GainLossKind::GeneralConstantMarginal, beta, kappa};
    }
};

/// Psychological parameters of a loss-averse agent. Validated on construction
/// and immutable afterwards.
class Preferences {
public:
    /// Throws InputError unless 0 < eta <= 1, lambda0 > 1, 0 <= gamma <= 1 and,
    /// for the general family, beta > 0, kappa > 0 and eta * beta < 1.
    Preferences(double eta, double lambda0, double gamma = 1.0,
                GainLossSpec gain_loss = GainLossSpec::linear());

    [[nodiscard]] double eta() const { return eta_; }
    [[nodiscard]] double lambda0() const { return lambda0_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] const GainLossSpec& gain_loss() const { return gain_loss_; }
    [[nodiscard]] bool is_linear() const { return gain_loss_.kind == GainLossKind::Linear; }

    /// Copy with a different gamma.
    [[nodiscard]] Preferences with_gamma(double gamma) const;

private:
    double eta_;
    double lambda0_;
    double gamma_;
    GainLossSpec gain_loss_;
};

/// P* = (eta*lambda - 1) / (eta*(lambda - 1)), returned unclamped. A negative
/// value means eta < 1/lambda and the agent is optimistic for every lottery.
[[nodiscard]] double cutoff_probability(const Preferences& prefs);
[[nodiscard]] double cutoff_probability(double eta, double lambda0);

/// Inverse of cutoff_probability in eta at fixed lambda: 1 / (lambda - P*(lambda - 1)).
/// Throws InputError unless 0 <= p_star <= 1 and lambda0 > 1.
[[nodiscard]] double eta_for_cutoff(double p_star, double lambda0);

/// Local loss-aversion factor lambda(x) of the general family, x >= 0.
/// For the linear family this is the constant lambda0.
[[nodiscard]] double loss_aversion_at(double x, const Preferences& prefs);

/// mu(x). Losses in the general family use the closed form of
/// -beta * integral_0^{-x} lambda(t) dt.
[[nodiscard]] double gain_loss(double x, const Preferences& prefs);

}  // namespace bbl
