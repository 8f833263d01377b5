#include "bbl/json_io.hpp"

#include "bbl/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bbl {

namespace {

std::string path(std::string_view parent, std::string_view key) {
    return std::string(parent) + "." + std::string(key);
}

[[noreturn]] void fail(std::string_view field, const std::string& why) {
    throw InputError(std::string(field) + ": " + why);
}

const json& require(const json& j, std::string_view field, const char* key) {
    if (!j.is_object()) fail(field, "expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) fail(path(field, key), "missing");
    return *it;
}

double number_at(const json& v, std::string_view field) {
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "must be finite");
    return x;
}

double number_or(const json& j, std::string_view field, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : number_at(*it, path(field, key));
}

std::vector<double> numbers_at(const json& v, std::string_view field) {
    if (!v.is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number_at(v[i], std::string(field) + "[" + std::to_string(i) + "]"));
    }
    return out;
}

// Rewraps an InputError from a constructor so the message names the field.
template <class F>
auto with_field(std::string_view field, F&& make) {
    try {
        return make();
    } catch (const DomainError&) {
        throw;
    } catch (const InputError& e) {
        fail(field, e.what());
    }
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    double rounded = 0.0;
    std::from_chars(buf, res.ptr, rounded);
    if (rounded == 0.0) rounded = 0.0;  // drop the sign of negative zero
    res = std::to_chars(buf, buf + sizeof buf, rounded);
    return std::string(buf, res.ptr);
}

json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    const std::string text = format_number(v);
    double rounded = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
}

json json_numbers(std::span<const double> v) {
    json out = json::array();
    for (double x : v) out.push_back(json_number(x));
    return out;
}

double parse_number(std::string_view text, std::string_view field) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
        fail(field, "'" + std::string(text) + "' is not a finite number");
    }
    return v;
}

json load_json_argument(const std::string& text, std::string_view field) {
    const auto start = text.find_first_not_of(" \t\r\n");
    std::string body;
    if (start != std::string::npos && (text[start] == '{' || text[start] == '[')) {
        body = text;
    } else {
        std::ifstream in(text);
        if (!in) fail(field, "cannot open file '" + text + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        fail(field, std::string("malformed JSON: ") + e.what());
    }
}

Preferences preferences_from_json(const json& j, std::string_view field) {
    const double eta = number_at(require(j, field, "eta"), path(field, "eta"));
    const double lambda = number_at(require(j, field, "lambda"), path(field, "lambda"));
    const double gamma = number_or(j, field, "gamma", 1.0);
    GainLossSpec spec = GainLossSpec::linear();
    if (auto it = j.find("gain_loss"); it != j.end()) {
        const std::string gl = path(field, "gain_loss");
        const json& kind = require(*it, gl, "kind");
        if (!kind.is_string()) fail(path(gl, "kind"), "expected a string");
        const auto k = kind.get<std::string>();
        if (k == "general") {
            spec = GainLossSpec::general(number_or(*it, gl, "beta", 1.0), number_or(*it, gl, "kappa", 1.0));
        } else if (k != "linear") {
            fail(path(gl, "kind"), "expected \"linear\" or \"general\", got \"" + k + "\"");
        }
    }
    return with_field(field, [&] { return Preferences(eta, lambda, gamma, spec); });
}

ConsumptionUtility utility_from_json(const json& j, std::string_view field) {
    const json& kind = require(j, field, "kind");
    if (!kind.is_string()) fail(path(field, "kind"), "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "linear") return ConsumptionUtility::linear();
    if (k == "log") return ConsumptionUtility::log();
    if (k == "power") {
        const double rho = number_at(require(j, field, "rho"), path(field, "rho"));
        return with_field(path(field, "rho"), [&] { return ConsumptionUtility::power(rho); });
    }
    fail(path(field, "kind"), "expected \"linear\", \"power\" or \"log\", got \"" + k + "\"");
}

DiscreteLottery lottery_from_json(const json& j, std::string_view field) {
    auto payoffs = numbers_at(require(j, field, "payoffs"), path(field, "payoffs"));
    auto probs = numbers_at(require(j, field, "probs"), path(field, "probs"));
    ConsumptionUtility u = ConsumptionUtility::linear();
    if (auto it = j.find("utility"); it != j.end()) u = utility_from_json(*it, path(field, "utility"));
    return with_field(field, [&] { return DiscreteLottery(std::move(payoffs), std::move(probs), u); });
}

ContinuousDistribution distribution_from_json(const json& j, std::string_view field) {
    if (!j.is_object() || j.size() != 1) {
        fail(field, "expected exactly one of \"normal\", \"mixture\", \"tabulated\", \"uniform\"");
    }
    const std::string key = j.begin().key();
    const json& v = j.begin().value();
    const std::string sub = path(field, key);
    if (key == "normal") {
        const double m = number_at(require(v, sub, "mean"), path(sub, "mean"));
        const double sd = number_at(require(v, sub, "sd"), path(sub, "sd"));
        return with_field(sub, [&] { return ContinuousDistribution::normal(m, sd); });
    }
    if (key == "mixture") {
        if (!v.is_array()) fail(sub, "expected an array of components");
        std::vector<MixtureComponent> comps;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string c = sub + "[" + std::to_string(i) + "]";
            comps.push_back({number_at(require(v[i], c, "w"), path(c, "w")),
                             number_at(require(v[i], c, "mean"), path(c, "mean")),
                             number_at(require(v[i], c, "sd"), path(c, "sd"))});
        }
        return with_field(sub, [&] { return ContinuousDistribution::mixture(std::move(comps)); });
    }
    if (key == "tabulated") {
        auto z = numbers_at(require(v, sub, "z"), path(sub, "z"));
        auto f = numbers_at(require(v, sub, "f"), path(sub, "f"));
        return with_field(sub, [&] { return ContinuousDistribution::tabulated(std::move(z), std::move(f)); });
    }
    if (key == "uniform") {
        const double lo = number_at(require(v, sub, "lo"), path(sub, "lo"));
        const double hi = number_at(require(v, sub, "hi"), path(sub, "hi"));
        return with_field(sub, [&] { return ContinuousDistribution::uniform(lo, hi); });
    }
    fail(field, "unknown distribution \"" + key + "\"");
}

Asset asset_from_json(const json& j, std::string_view field) {
    Asset a;
    a.r_f = number_at(require(j, field, "r_f"), path(field, "r_f"));
    a.excess = distribution_from_json(require(j, field, "excess"), path(field, "excess"));
    return a;
}

json to_json(const Preferences& prefs) {
    json j{{"eta", json_number(prefs.eta())},
           {"lambda", json_number(prefs.lambda0())},
           {"gamma", json_number(prefs.gamma())}};
    const auto& gl = prefs.gain_loss();
    if (gl.kind == GainLossKind::Linear) {
        j["gain_loss"] = {{"kind", "linear"}};
    } else {
        j["gain_loss"] = {{"kind", "general"}, {"beta", json_number(gl.beta)}, {"kappa", json_number(gl.kappa)}};
    }
    return j;
}

json to_json(const ConsumptionUtility& utility) {
    switch (utility.kind()) {
        case UtilityKind::Linear: return {{"kind", "linear"}};
        case UtilityKind::Log: return {{"kind", "log"}};
        case UtilityKind::Power: return {{"kind", "power"}, {"rho", json_number(utility.rho())}};
    }
    return {};
}

json to_json(const ContinuousDistribution& dist) {
    const auto& spec = dist.spec();
    if (auto* n = std::get_if<NormalSpec>(&spec)) {
        return {{"normal", {{"mean", json_number(n->mean)}, {"sd", json_number(n->sd)}}}};
    }
    if (auto* m = std::get_if<MixtureSpec>(&spec)) {
        json arr = json::array();
        for (const auto& c : m->components) {
            arr.push_back({{"w", json_number(c.weight)}, {"mean", json_number(c.mean)}, {"sd", json_number(c.sd)}});
        }
        return {{"mixture", arr}};
    }
    const auto& t = std::get<TabulatedSpec>(spec);
    return {{"tabulated", {{"z", json_numbers(t.z)}, {"f", json_numbers(t.f)}}}};
}

json to_json(const BeliefSolution& s) {
    return {{"q", json_numbers(s.q)},
            {"subjective_expectation", json_number(s.subjective_expectation)},
            {"gain_mass", json_number(s.gain_mass)},
            {"total_utility", json_number(s.total_utility)},
            {"expectation_interval",
             {{"lo", json_number(s.expectation_interval.lo)}, {"hi", json_number(s.expectation_interval.hi)}}}};
}

json to_json(const TimingVerdict& v) {
    return {{"u_early", json_number(v.u_early)},
            {"u_wait", json_number(v.u_wait)},
            {"verdict", to_string(v.verdict)},
            {"tolerance", json_number(v.tolerance)}};
}

json to_json(const LotteryComparison& c) {
    return {{"value_a", json_number(c.value_a)},
            {"value_b", json_number(c.value_b)},
            {"verdict", to_string(c.verdict)},
            {"tolerance", json_number(c.tolerance)}};
}

json to_json(const PortfolioSolution& s) {
    return {{"alpha", json_number(s.alpha)},
            {"belief_expectation", json_number(s.belief_expectation)},
            {"r_ce", json_number(s.r_ce)},
            {"value", json_number(s.value)},
            {"converged", s.converged},
            {"iterations", s.iterations}};
}

json to_json(const EquilibriumPoint& p) {
    return {{"p_star", json_number(p.p_star)},
            {"eta", json_number(p.eta)},
            {"pi_rational", json_number(p.pi_rational)},
            {"pi_naive", json_number(p.pi_naive)},
            {"pi_sophisticated", json_number(p.pi_sophisticated)}};
}

}  // namespace bbl
