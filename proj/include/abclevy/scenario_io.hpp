#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "abclevy/env.hpp"

namespace abclevy {

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * Scenario from its JSON form. Every field is optional except that either
 * `hotspots` or `kind` + `n_hotspots` must be present; missing fields take
 * the library defaults. Unknown keys are rejected. The result is validated.
 */
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioConfig& config);

ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Named presets: uniform20, twocluster20.
ScenarioConfig preset_scenario(const std::string& name, std::uint64_t seed);

}  // namespace abclevy
