#pragma once

#include "bbl/continuous.hpp"
#include "bbl/distribution.hpp"
#include "bbl/equilibrium.hpp"
#include "bbl/lottery.hpp"
#include "bbl/portfolio.hpp"
#include "bbl/preferences.hpp"
#include "bbl/timing.hpp"
#include "bbl/utility.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace bbl {

using json = nlohmann::json;

/// Shortest decimal text that round-trips the value rounded to 10 significant
/// digits; locale independent. Non-finite values format as "nan", "inf", "-inf".
[[nodiscard]] std::string format_number(double v);
/// JSON number rounded to 10 significant digits; null for non-finite values.
[[nodiscard]] json json_number(double v);
[[nodiscard]] json json_numbers(std::span<const double> v);

/// Strict decimal parse of the whole string. Throws InputError naming `field`.
[[nodiscard]] double parse_number(std::string_view text, std::string_view field);

/// Parses `text` as JSON when it starts with '{' or '[', otherwise reads it as
/// a file path. Throws InputError naming `field` on failure.
[[nodiscard]] json load_json_argument(const std::string& text, std::string_view field);

// Parsers throw InputError with the dotted path of the offending field.
[[nodiscard]] Preferences preferences_from_json(const json& j, std::string_view field = "prefs");
[[nodiscard]] ConsumptionUtility utility_from_json(const json& j, std::string_view field = "utility");
[[nodiscard]] DiscreteLottery lottery_from_json(const json& j, std::string_view field = "lottery");
[[nodiscard]] ContinuousDistribution distribution_from_json(const json& j,
                                                            std::string_view field = "dist");
[[nodiscard]] Asset asset_from_json(const json& j, std::string_view field = "asset");

[[nodiscard]] json to_json(const Preferences& prefs);
[[nodiscard]] json to_json(const ConsumptionUtility& utility);
[[nodiscard]] json to_json(const ContinuousDistribution& dist);
[[nodiscard]] json to_json(const BeliefSolution& s);
[[nodiscard]] json to_json(const TimingVerdict& v);
[[nodiscard]] json to_json(const LotteryComparison& c);
[[nodiscard]] json to_json(const PortfolioSolution& s);
[[nodiscard]] json to_json(const EquilibriumPoint& p);

}  // namespace bbl
