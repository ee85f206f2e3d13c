#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "market_clock/market_model.hpp"

namespace mclock {

using MarketSpec = std::variant<LevyMarketSpec, ItoMarketSpec>;

class SpecError : public std::runtime_error {
public:
    explicit SpecError(std::vector<std::string> errors);
    std::vector<std::string> errors;
};

// Market-spec document:
//   {"d": 1, "m": 1, "a": [...], "sigma": [[...]] | "c": [[...]],
//    "atoms": [{"z": [...], "rate": r}, ...],
//    "ito": {"model": "constant" | "schedule" | "stochastic_vol", ...}}
// The presence of "ito" selects an Ito market. Returns a validated spec;
// throws SpecError listing every problem found.
MarketSpec parse_market_spec(const nlohmann::json& doc);
MarketSpec parse_market_spec_text(const std::string& text);
MarketSpec load_market_spec(const std::filesystem::path& path);

}  // namespace mclock
