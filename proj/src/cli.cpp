#include "bbl/cli.hpp"

#include "bbl/continuous.hpp"
#include "bbl/equilibrium.hpp"
#include "bbl/errors.hpp"
#include "bbl/json_io.hpp"
#include "bbl/lottery.hpp"
#include "bbl/oracles.hpp"
#include "bbl/portfolio.hpp"
#include "bbl/timing.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace bbl::cli {

namespace {

struct Options {
    std::string format = "json";
    std::string output;

    double eta = 0.0, lambda = 0.0, p_star = 0.0;
    std::string lottery, prefs, dist, dist_b, asset, utility, agent, bounds, grid = "0.05:0.95:0.01";
    double step = 0.02;
    int random = 0;
    std::uint64_t seed = 1;
};

// Applies BBL_QUAD_TOL to a parsed distribution.
ContinuousDistribution configured(ContinuousDistribution d) {
    if (const char* env = std::getenv("BBL_QUAD_TOL"); env && *env) {
        QuadratureConfig cfg = d.quadrature();
        cfg.abs_tol = parse_number(env, "BBL_QUAD_TOL");
        if (!(cfg.abs_tol > 0.0)) throw InputError("BBL_QUAD_TOL: must be positive");
        return d.with_quadrature(cfg);
    }
    return d;
}

ContinuousDistribution load_dist(const std::string& text, const char* field) {
    return configured(distribution_from_json(load_json_argument(text, field), field));
}

Asset load_asset(const std::string& text) {
    Asset a = asset_from_json(load_json_argument(text, "asset"), "asset");
    a.excess = configured(a.excess);
    return a;
}

ConsumptionUtility load_utility(const std::string& text) {
    if (text.empty()) return ConsumptionUtility::linear();
    return utility_from_json(load_json_argument(text, "utility"), "utility");
}

AlphaBounds load_bounds(const std::string& text, const Asset& asset, const ConsumptionUtility& u) {
    if (text.empty()) return feasible_alpha_bounds(asset, u, AlphaBounds{});
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("bounds: expected lo:hi, got '" + text + "'");
    return {parse_number(text.substr(0, colon), "bounds.lo"),
            parse_number(text.substr(colon + 1), "bounds.hi")};
}

std::string csv_row(std::initializer_list<std::pair<const char*, double>> cols) {
    std::string head, row;
    for (const auto& [name, v] : cols) {
        head += (head.empty() ? "" : ",") + std::string(name);
        row += (row.empty() ? "" : ",") + format_number(v);
    }
    return head + "\n" + row + "\n";
}

std::string render(const json& j) { return j.dump() + "\n"; }

struct Result {
    std::string text;
    int code = 0;
};

Result cmd_pstar(const Options& o, bool inverse) {
    if (inverse) {
        const double eta = eta_for_cutoff(o.p_star, o.lambda);
        return {o.format == "csv" ? csv_row({{"eta", eta}}) : render(json_number(eta))};
    }
    const Preferences prefs(o.eta, o.lambda);
    const double p = cutoff_probability(prefs);
    return {o.format == "csv" ? csv_row({{"p_star", p}}) : render(json_number(p))};
}

Result cmd_beliefs(const Options& o) {
    const auto lottery = lottery_from_json(load_json_argument(o.lottery, "lottery"));
    const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
    const auto sol = solve_optimal_beliefs(lottery, prefs);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "payoff,p,q\n";
        for (std::size_t s = 0; s < lottery.size(); ++s) {
            os << format_number(lottery.payoffs()[s]) << ',' << format_number(lottery.probs()[s]) << ','
               << format_number(sol.q[s]) << '\n';
        }
        return {os.str()};
    }
    json j = to_json(sol);
    j["payoffs"] = json_numbers(lottery.payoffs());
    j["probs"] = json_numbers(lottery.probs());
    j["p_star"] = json_number(cutoff_probability(prefs));
    j["rational_expectation"] = json_number(lottery.rational_expectation());
    j["rational_gain_mass"] = json_number(gain_probability(lottery, lottery.rational_expectation()));
    j["rational_utility"] = json_number(rational_utility(lottery, prefs));
    return {render(j)};
}

Result cmd_timing(const Options& o) {
    const auto lottery = lottery_from_json(load_json_argument(o.lottery, "lottery"));
    const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
    const auto v = timing_preference(lottery, prefs);
    if (o.format == "csv") {
        return {"u_early,u_wait,verdict\n" + format_number(v.u_early) + "," + format_number(v.u_wait) +
                "," + to_string(v.verdict) + "\n"};
    }
    return {render(to_json(v))};
}

Result cmd_compare(const Options& o) {
    const auto a = load_dist(o.dist, "a");
    const auto b = load_dist(o.dist_b, "b");
    const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
    const AgentKind kind = o.agent == "naive" ? AgentKind::Naive : AgentKind::Sophisticated;
    const auto c = compare(a, b, prefs, kind);
    if (o.format == "csv") {
        return {"value_a,value_b,verdict\n" + format_number(c.value_a) + "," + format_number(c.value_b) +
                "," + to_string(c.verdict) + "\n"};
    }
    json j = to_json(c);
    j["agent"] = to_string(kind);
    return {render(j)};
}

Result cmd_portfolio(const Options& o) {
    const Asset asset = load_asset(o.asset);
    const ConsumptionUtility u = load_utility(o.utility);
    const AlphaBounds bounds = load_bounds(o.bounds, asset, u);
    std::vector<std::pair<std::string, PortfolioSolution>> rows;
    const bool all = o.agent == "all";
    if (all || o.agent == "rational") rows.emplace_back("rational", rational_alpha(asset, u, bounds));
    if (all || o.agent != "rational") {
        if (o.prefs.empty()) throw InputError("prefs: required for naive and sophisticated agents");
        const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
        if (all || o.agent == "naive") rows.emplace_back("naive", naive_alpha(asset, prefs, u, bounds));
        if (all || o.agent == "sophisticated") {
            rows.emplace_back("sophisticated", sophisticated_alpha(asset, prefs, u, bounds));
        }
    }
    int code = 0;
    for (const auto& [name, s] : rows) code = s.converged ? code : 2;

    std::string text;
    if (o.format == "csv") {
        text = "agent,alpha,belief_expectation,r_ce,value,converged,iterations\n";
        for (const auto& [name, s] : rows) {
            text += name + "," + format_number(s.alpha) + "," + format_number(s.belief_expectation) + "," +
                    format_number(s.r_ce) + "," + format_number(s.value) + "," +
                    (s.converged ? "true" : "false") + "," + std::to_string(s.iterations) + "\n";
        }
    } else if (rows.size() == 1) {
        text = render(to_json(rows.front().second));
    } else {
        json j = json::object();
        for (const auto& [name, s] : rows) j[name] = to_json(s);
        text = render(j);
    }
    return {text, code};
}

Result cmd_equilibrium(const Options& o) {
    const auto dist = load_dist(o.dist, "dist");
    const auto grid = parse_grid(o.grid);
    const auto points = sweep(dist, o.lambda, grid);
    if (o.format == "csv") return {to_csv(points)};
    const auto t = sweep_thresholds(dist, points);
    json arr = json::array();
    for (const auto& p : points) arr.push_back(to_json(p));
    return {render({{"points", arr},
                    {"thresholds",
                     {{"naive_zero", json_number(t.naive_zero)},
                      {"sophisticated_crossing", json_number(t.sophisticated_crossing)},
                      {"sophisticated_argmin", json_number(t.sophisticated_argmin)}}}})};
}

json verify_beliefs(const DiscreteLottery& lottery, const Preferences& prefs, double step) {
    const auto sol = solve_optimal_beliefs(lottery, prefs);
    const auto grid = oracle::grid_search_beliefs(lottery, prefs, step);
    const double solver_at_oracle = oracle::total_utility(lottery, sol.q, prefs);
    const bool ok = grid.utility <= solver_at_oracle + 1e-12 &&
                    std::abs(solver_at_oracle - sol.total_utility) <= 1e-9;
    return {{"solver_utility", json_number(sol.total_utility)},
            {"solver_q", json_numbers(sol.q)},
            {"oracle_utility", json_number(grid.utility)},
            {"oracle_q", json_numbers(grid.q)},
            {"grid_points", grid.evaluated},
            {"pass", ok}};
}

Result cmd_verify(const Options& o) {
    json report = json::object();
    bool ok = true;
    if (!o.lottery.empty()) {
        const auto lottery = lottery_from_json(load_json_argument(o.lottery, "lottery"));
        const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
        report["beliefs"] = verify_beliefs(lottery, prefs, o.step);
        ok = ok && report["beliefs"]["pass"].get<bool>();
    }
    if (!o.asset.empty()) {
        const Asset asset = load_asset(o.asset);
        const ConsumptionUtility u = load_utility(o.utility);
        const AlphaBounds b = load_bounds(o.bounds, asset, u);
        PortfolioSolution s;
        std::function<double(double)> objective;
        if (o.agent == "sophisticated") {
            const auto prefs = preferences_from_json(load_json_argument(o.prefs, "prefs"));
            s = sophisticated_alpha(asset, prefs, u, b);
            objective = oracle::sophisticated_objective(asset, prefs, u);
        } else {
            s = rational_alpha(asset, u, b);
            objective = [&](double a) { return oracle::rational_objective(asset, u, a); };
        }
        const auto g = oracle::grid_search_alpha(objective, b.lo, b.hi, 2001);
        const bool pass = std::abs(g.alpha - s.alpha) <= g.step;
        report["portfolio"] = {{"solver_alpha", json_number(s.alpha)},
                               {"oracle_alpha", json_number(g.alpha)},
                               {"grid_step", json_number(g.step)},
                               {"pass", pass}};
        ok = ok && pass;
    }
    if (o.random > 0) {
        std::mt19937_64 rng(o.seed);
        int failures = 0;
        for (int i = 0; i < o.random; ++i) {
            const auto lottery = oracle::random_lottery(rng);
            const auto prefs = oracle::random_preferences(rng);
            if (!verify_beliefs(lottery, prefs, o.step)["pass"].get<bool>()) ++failures;
        }
        report["random"] = {{"count", o.random}, {"seed", o.seed}, {"failures", failures}};
        ok = ok && failures == 0;
    }
    if (report.empty()) throw InputError("verify: give --lottery, --asset or --random");
    report["pass"] = ok;
    return {render(report), ok ? 0 : 2};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Optimal subjective beliefs under loss aversion", "bbl"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", o.output, "Write output to this file instead of stdout");

    auto* pstar = app.add_subcommand("pstar", "Cutoff probability P*, or eta for a given P*");
    auto* eta_opt = pstar->add_option("--eta", o.eta, "Weight on gain-loss utility");
    auto* p_opt = pstar->add_option("--p-star", o.p_star, "Cutoff to invert");
    pstar->add_option("--lambda", o.lambda, "Loss aversion")->required();
    eta_opt->excludes(p_opt);

    auto* beliefs = app.add_subcommand("beliefs", "Solve for optimal beliefs over a discrete lottery");
    beliefs->add_option("--lottery", o.lottery, "Lottery JSON or path")->required();
    beliefs->add_option("--prefs", o.prefs, "Preferences JSON or path")->required();

    auto* timing = app.add_subcommand("timing", "Early versus late resolution of uncertainty");
    timing->add_option("--lottery", o.lottery, "Lottery JSON or path")->required();
    timing->add_option("--prefs", o.prefs, "Preferences JSON or path")->required();

    auto* cmp = app.add_subcommand("compare", "Rank two continuous lotteries");
    cmp->add_option("--a", o.dist, "Distribution JSON or path")->required();
    cmp->add_option("--b", o.dist_b, "Distribution JSON or path")->required();
    cmp->add_option("--prefs", o.prefs, "Preferences JSON or path")->required();
    cmp->add_option("--agent", o.agent, "naive or sophisticated")
        ->check(CLI::IsMember({"naive", "sophisticated"}));

    auto* port = app.add_subcommand("portfolio", "Risky share for rational, naive and sophisticated agents");
    port->add_option("--asset", o.asset, "Asset JSON or path")->required();
    port->add_option("--prefs", o.prefs, "Preferences JSON or path");
    port->add_option("--utility", o.utility, "Consumption utility JSON (default linear)");
    port->add_option("--bounds", o.bounds, "lo:hi (default [-10, 10] cut to keep wealth positive)");
    port->add_option("--agent", o.agent, "rational, naive, sophisticated or all")
        ->check(CLI::IsMember({"rational", "naive", "sophisticated", "all"}));

    auto* eq = app.add_subcommand("equilibrium", "Equilibrium prices across cutoff probabilities");
    eq->add_option("--dist", o.dist, "Payoff distribution JSON or path")->required();
    eq->add_option("--lambda", o.lambda, "Loss aversion")->required();
    eq->add_option("--grid", o.grid, "start:end:step, inclusive");

    auto* verify = app.add_subcommand("verify", "Check solvers against brute-force oracles");
    verify->add_option("--lottery", o.lottery, "Lottery JSON or path");
    verify->add_option("--prefs", o.prefs, "Preferences JSON or path");
    verify->add_option("--step", o.step, "Simplex grid step");
    verify->add_option("--asset", o.asset, "Asset JSON or path");
    verify->add_option("--utility", o.utility, "Consumption utility JSON");
    verify->add_option("--bounds", o.bounds, "lo:hi");
    verify->add_option("--agent", o.agent, "rational or sophisticated")
        ->check(CLI::IsMember({"rational", "sophisticated"}));
    verify->add_option("--random", o.random, "Number of random lotteries to check");
    verify->add_option("--seed", o.seed, "Seed for --random");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Result r;
        if (*pstar) {
            if (eta_opt->count() == 0 && p_opt->count() == 0) {
                throw InputError("pstar: give --eta or --p-star");
            }
            r = cmd_pstar(o, p_opt->count() > 0);
        } else if (*beliefs) {
            r = cmd_beliefs(o);
        } else if (*timing) {
            r = cmd_timing(o);
        } else if (*cmp) {
            if (o.agent.empty()) o.agent = "sophisticated";
            r = cmd_compare(o);
        } else if (*port) {
            if (o.agent.empty()) o.agent = "all";
            r = cmd_portfolio(o);
        } else if (*eq) {
            r = cmd_equilibrium(o);
        } else {
            if (o.agent.empty()) o.agent = "rational";
            r = cmd_verify(o);
        }
        if (o.output.empty()) {
            out << r.text;
        } else {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw InputError("output: cannot open '" + o.output + "'");
            f << r.text;
        }
        if (r.code == 2) err << "error: numerical check failed or did not converge\n";
        return r.code;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bbl::cli
