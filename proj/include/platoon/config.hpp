#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "platoon/experiment.hpp"
#include "platoon/json_io.hpp"
#include "platoon/scenario.hpp"

namespace platoon {

// Settings for the single-game commands (solve, oracle).
struct ModelConfig {
  std::optional<Model> name;
  std::optional<std::string> scenario_file;   // when absent: generate from fleet
  std::vector<Rational> scores;               // explicit score-system scores (optional)
  int max_sweeps = 100;
  std::uint64_t enumeration_cap = 1'000'000;  // oracle guard
};

// One experiment description: unknown keys are rejected with the key named.
// Sections are optional; absent values fall back to the standard setup.
struct AppConfig {
  std::uint64_t seed = 1;
  EconomicsConfig economics;
  FleetConfig fleet;
  ModelConfig model;
  SweepConfig sweep;  // fleet/economics/base_seed mirrored from the above
};

AppConfig app_config_from_json(const nlohmann::json& doc);
AppConfig load_app_config(const std::string& path);

}  // namespace platoon
