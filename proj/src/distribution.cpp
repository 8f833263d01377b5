#include "bbl/distribution.hpp"

#include "bbl/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bbl {

namespace {

constexpr double kTruncationSds = 8.0;
constexpr int kBisectionCap = 200;

double std_normal_pdf(double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}
double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }
double std_normal_upper(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

void check_component(double mean, double sd) {
    if (!std::isfinite(mean)) throw InputError("distribution mean must be finite");
    if (!(sd > 0.0) || !std::isfinite(sd)) throw InputError("distribution sd must be positive");
}

// mu * Phi(t) - sigma * phi(t) with t = (a - mu) / sigma.
double normal_partial(double mean, double sd, double a) {
    const double t = (a - mean) / sd;
    return mean * std_normal_cdf(t) - sd * std_normal_pdf(t);
}

struct Segment {
    double z0, f0, slope;
};

Segment segment(const TabulatedSpec& t, std::size_t i) {
    return {t.z[i], t.f[i], (t.f[i + 1] - t.f[i]) / (t.z[i + 1] - t.z[i])};
}

// Integrals of the linear density over [z0, z0 + d].
double segment_mass(const Segment& s, double d) { return s.f0 * d + 0.5 * s.slope * d * d; }
double segment_moment(const Segment& s, double d) {
    return s.f0 * s.z0 * d + 0.5 * (s.f0 + s.slope * s.z0) * d * d + s.slope * d * d * d / 3.0;
}

}  // namespace

ContinuousDistribution::ContinuousDistribution(DistributionSpec spec) : spec_(std::move(spec)) {
    if (auto* n = std::get_if<NormalSpec>(&spec_)) {
        check_component(n->mean, n->sd);
        lo_ = n->mean - kTruncationSds * n->sd;
        hi_ = n->mean + kTruncationSds * n->sd;
    } else if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        if (m->components.empty()) throw InputError("mixture needs at least one component");
        double total = 0.0;
        lo_ = INFINITY;
        hi_ = -INFINITY;
        for (const auto& c : m->components) {
            check_component(c.mean, c.sd);
            if (!(c.weight > 0.0)) throw InputError("mixture weights must be positive");
            total += c.weight;
            lo_ = std::min(lo_, c.mean - kTruncationSds * c.sd);
            hi_ = std::max(hi_, c.mean + kTruncationSds * c.sd);
        }
        if (std::abs(total - 1.0) > 1e-9) throw InputError("mixture weights must sum to 1");
        for (auto& c : m->components) c.weight /= total;
    } else {
        auto& t = std::get<TabulatedSpec>(spec_);
        if (t.z.size() < 2 || t.z.size() != t.f.size()) {
            throw InputError("tabulated density needs matching z and f arrays of length >= 2");
        }
        for (std::size_t i = 0; i < t.z.size(); ++i) {
            if (!std::isfinite(t.z[i]) || !std::isfinite(t.f[i]) || t.f[i] < 0.0) {
                throw InputError("tabulated density values must be finite and nonnegative");
            }
            if (i > 0 && !(t.z[i] > t.z[i - 1])) {
                throw InputError("tabulated z grid must be strictly increasing");
            }
        }
        double area = 0.0;
        for (std::size_t i = 0; i + 1 < t.z.size(); ++i) {
            area += 0.5 * (t.f[i] + t.f[i + 1]) * (t.z[i + 1] - t.z[i]);
        }
        if (!(area > 0.0)) throw InputError("tabulated density has zero mass");
        for (double& v : t.f) v /= area;
        cumulative_.assign(t.z.size(), 0.0);
        for (std::size_t i = 0; i + 1 < t.z.size(); ++i) {
            cumulative_[i + 1] = cumulative_[i] + segment_mass(segment(t, i), t.z[i + 1] - t.z[i]);
        }
        lo_ = t.z.front();
        hi_ = t.z.back();
        breakpoints_.assign(t.z.begin() + 1, t.z.end() - 1);
    }
}

ContinuousDistribution ContinuousDistribution::normal(double mean, double sd) {
    return ContinuousDistribution(NormalSpec{mean, sd});
}

ContinuousDistribution ContinuousDistribution::mixture(std::vector<MixtureComponent> components) {
    return ContinuousDistribution(MixtureSpec{std::move(components)});
}

ContinuousDistribution ContinuousDistribution::tabulated(std::vector<double> z, std::vector<double> f) {
    return ContinuousDistribution(TabulatedSpec{std::move(z), std::move(f)});
}

ContinuousDistribution ContinuousDistribution::uniform(double lo, double hi) {
    if (!(hi > lo)) throw InputError("uniform needs lo < hi");
    return tabulated({lo, hi}, {1.0, 1.0});
}

ContinuousDistribution ContinuousDistribution::with_quadrature(QuadratureConfig cfg) const {
    ContinuousDistribution copy = *this;
    copy.quad_ = cfg;
    return copy;
}

double ContinuousDistribution::pdf(double z) const {
    if (z < lo_ || z > hi_) return 0.0;
    if (auto* n = std::get_if<NormalSpec>(&spec_)) {
        return std_normal_pdf((z - n->mean) / n->sd) / n->sd;
    }
    if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        double acc = 0.0;
        for (const auto& c : m->components) acc += c.weight * std_normal_pdf((z - c.mean) / c.sd) / c.sd;
        return acc;
    }
    const auto& t = std::get<TabulatedSpec>(spec_);
    auto it = std::upper_bound(t.z.begin(), t.z.end(), z);
    std::size_t i = it == t.z.begin() ? 0 : static_cast<std::size_t>(it - t.z.begin()) - 1;
    if (i + 1 >= t.z.size()) return t.f.back();
    const Segment s = segment(t, i);
    return s.f0 + s.slope * (z - s.z0);
}

double ContinuousDistribution::cdf(double z) const {
    if (auto* n = std::get_if<NormalSpec>(&spec_)) return std_normal_cdf((z - n->mean) / n->sd);
    if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        double acc = 0.0;
        for (const auto& c : m->components) acc += c.weight * std_normal_cdf((z - c.mean) / c.sd);
        return acc;
    }
    const auto& t = std::get<TabulatedSpec>(spec_);
    if (z <= t.z.front()) return 0.0;
    if (z >= t.z.back()) return 1.0;
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(t.z.begin(), t.z.end(), z) - t.z.begin()) - 1;
    return cumulative_[i] + segment_mass(segment(t, i), z - t.z[i]);
}

double ContinuousDistribution::upper_tail(double z) const {
    if (auto* n = std::get_if<NormalSpec>(&spec_)) return std_normal_upper((z - n->mean) / n->sd);
    if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        double acc = 0.0;
        for (const auto& c : m->components) acc += c.weight * std_normal_upper((z - c.mean) / c.sd);
        return acc;
    }
    return 1.0 - cdf(z);
}

double ContinuousDistribution::mean() const {
    if (auto* n = std::get_if<NormalSpec>(&spec_)) return n->mean;
    if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        double acc = 0.0;
        for (const auto& c : m->components) acc += c.weight * c.mean;
        return acc;
    }
    return partial_expectation_exact(hi_);
}

double ContinuousDistribution::upper_quantile(double tail) const {
    if (!(tail > 0.0 && tail < 1.0)) {
        throw InputError("upper-tail mass must lie strictly inside (0, 1); the subjective "
                         "expectation is unbounded at P* = 0 or 1");
    }
    double a = lo_, b = hi_;
    for (int it = 0; it < kBisectionCap; ++it) {
        const double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) break;
        if (upper_tail(mid) > tail) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return a + 0.5 * (b - a);
}

double ContinuousDistribution::partial_expectation_exact(double a) const {
    if (auto* n = std::get_if<NormalSpec>(&spec_)) return normal_partial(n->mean, n->sd, a);
    if (auto* m = std::get_if<MixtureSpec>(&spec_)) {
        double acc = 0.0;
        for (const auto& c : m->components) acc += c.weight * normal_partial(c.mean, c.sd, a);
        return acc;
    }
    const auto& t = std::get<TabulatedSpec>(spec_);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.z.size(); ++i) {
        if (a <= t.z[i]) break;
        const double d = std::min(a, t.z[i + 1]) - t.z[i];
        acc += segment_moment(segment(t, i), d);
    }
    return acc;
}

}  // namespace bbl
