#include "bbl/utility.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <limits>

namespace bbl {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ConsumptionUtility ConsumptionUtility::power(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw InputError("utility.rho must be positive");
    }
    ConsumptionUtility u;
    if (rho == 1.0) {
        u.kind_ = UtilityKind::Log;
        return u;
    }
    u.kind_ = UtilityKind::Power;
    u.rho_ = rho;
    return u;
}

ConsumptionUtility ConsumptionUtility::log() {
    ConsumptionUtility u;
    u.kind_ = UtilityKind::Log;
    return u;
}

double ConsumptionUtility::operator()(double x) const {
    switch (kind_) {
    case UtilityKind::Linear:
        return x;
    case UtilityKind::Log:
        return x > 0.0 ? std::log(x) : kNaN;
    case UtilityKind::Power:
        if (rho_ < 1.0 ? x < 0.0 : x <= 0.0) return kNaN;
        return std::pow(x, 1.0 - rho_) / (1.0 - rho_);
    }
    return kNaN;
}

double ConsumptionUtility::derivative(double x) const {
    switch (kind_) {
    case UtilityKind::Linear:
        return 1.0;
    case UtilityKind::Log:
        return x > 0.0 ? 1.0 / x : kNaN;
    case UtilityKind::Power:
        return x > 0.0 ? std::pow(x, -rho_) : kNaN;
    }
    return kNaN;
}

double ConsumptionUtility::inverse(double v) const {
    switch (kind_) {
    case UtilityKind::Linear:
        return v;
    case UtilityKind::Log:
        return std::exp(v);
    case UtilityKind::Power: {
        const double base = v * (1.0 - rho_);
        if (!(base > 0.0 || (rho_ < 1.0 && base == 0.0))) {
            throw DomainError("utility value outside the range of the power utility");
        }
        return std::pow(base, 1.0 / (1.0 - rho_));
    }
    }
    return kNaN;
}

double ConsumptionUtility::domain_floor() const {
    if (kind_ == UtilityKind::Linear) return -std::numeric_limits<double>::infinity();
    return 0.0;
}

}  // namespace bbl
