#pragma once

namespace bbl {

enum class UtilityKind { Linear, Power, Log };

/// Consumption utility u(.). Power uses the CRRA form x^(1-rho)/(1-rho), with
/// rho = 1 treated as Log. Values outside the domain (nonpositive wealth for
/// Log and Power) come back as NaN so integrators can flag them.
class ConsumptionUtility {
public:
    ConsumptionUtility() = default;

    static ConsumptionUtility linear() { return {}; }
    /// Throws InputError unless rho > 0.
    static ConsumptionUtility power(double rho);
    static ConsumptionUtility log();

    [[nodiscard]] UtilityKind kind() const { return kind_; }
    [[nodiscard]] double rho() const { return rho_; }

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double derivative(double x) const;
    /// u^{-1}(v). Throws DomainError when v is outside the range of u.
    [[nodiscard]] double inverse(double v) const;
    /// Smallest wealth at which u is finite is strictly above this value
    /// (or -infinity for Linear).
    [[nodiscard]] double domain_floor() const;

private:
    UtilityKind kind_ = UtilityKind::Linear;
    double rho_ = 0.0;
};

}  // namespace bbl
