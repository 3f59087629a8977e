#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "platoon/experiment.hpp"
#include "platoon/scenario.hpp"

namespace platoon {

// Bad or unknown configuration/artifact content; the message names the
// offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejects keys outside `allowed` and requires the `required` subset.
// `where` is a dotted path used in error messages ("economics", "model").
void check_keys(const nlohmann::json& object, const std::string& where,
                const std::vector<std::string>& allowed,
                const std::vector<std::string>& required = {});

// Monetary amounts and other exact quantities travel as decimal strings
// ("26.25") or as JSON numbers; floats are converted via their shortest
// round-trip decimal, so 0.35 means exactly 35/100.
nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& value, const std::string& where);

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json leader_assignment_to_json(const LeaderAssignment& leaders);
nlohmann::json market_assignment_to_json(const MarketAssignment& assignment);

// Full per-run artifact (profile, utilities, roles, model internals).
nlohmann::json run_record_to_json(const RunRecord& record);

// File helpers; throw ConfigError with the path on I/O failure.
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace platoon
