#include "platoon/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace platoon {

using nlohmann::json;

void check_keys(const json& object, const std::string& where,
                const std::vector<std::string>& allowed, const std::vector<std::string>& required) {
  if (!object.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
  }
  for (const std::string& key : required) {
    if (!object.contains(key)) {
      throw ConfigError(where + ": missing required key \"" + key + "\"");
    }
  }
}

json rational_to_json(const Rational& value) { return value.to_string(); }

Rational rational_from_json(const json& value, const std::string& where) {
  if (value.is_string()) {
    auto parsed = Rational::try_parse(value.get<std::string>());
    if (!parsed) throw ConfigError(where + ": cannot parse \"" + value.get<std::string>() + "\" as a number");
    return *parsed;
  }
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number_float()) return Rational::from_double(value.get<double>());
  throw ConfigError(where + ": expected a number or numeric string");
}

json scenario_to_json(const Scenario& scenario) {
  json vehicles = json::array();
  for (const Vehicle& v : scenario.vehicles()) {
    vehicles.push_back({
        {"id", v.id},
        {"default_departure", v.default_departure},
        {"max_delay", v.max_delay},
        {"profit_leader", rational_to_json(v.profit_leader)},
        {"profit_follower", rational_to_json(v.profit_follower)},
        {"penalty_rate", rational_to_json(v.penalty_rate)},
        {"score_valuation", rational_to_json(v.score_valuation)},
    });
  }
  return json{
      {"standard_profit_leader", rational_to_json(scenario.standard_profit_leader())},
      {"standard_profit_follower", rational_to_json(scenario.standard_profit_follower())},
      {"vehicles", std::move(vehicles)},
  };
}

Scenario scenario_from_json(const json& doc) {
  check_keys(doc, "scenario",
             {"standard_profit_leader", "standard_profit_follower", "vehicles"},
             {"standard_profit_leader", "standard_profit_follower", "vehicles"});
  if (!doc.at("vehicles").is_array()) throw ConfigError("scenario.vehicles: expected an array");

  std::vector<Vehicle> vehicles;
  int index = 0;
  for (const json& entry : doc.at("vehicles")) {
    const std::string where = "scenario.vehicles[" + std::to_string(index++) + "]";
    check_keys(entry, where,
               {"id", "default_departure", "max_delay", "profit_leader", "profit_follower",
                "penalty_rate", "score_valuation"},
               {"id", "default_departure", "max_delay", "profit_leader", "profit_follower",
                "penalty_rate", "score_valuation"});
    Vehicle v;
    if (!entry.at("id").is_number_integer()) throw ConfigError(where + ".id: expected an integer");
    v.id = entry.at("id").get<int>();
    if (!entry.at("default_departure").is_number_integer()) {
      throw ConfigError(where + ".default_departure: expected an integer");
    }
    v.default_departure = entry.at("default_departure").get<int>();
    if (!entry.at("max_delay").is_number_integer()) {
      throw ConfigError(where + ".max_delay: expected an integer");
    }
    v.max_delay = entry.at("max_delay").get<int>();
    v.profit_leader = rational_from_json(entry.at("profit_leader"), where + ".profit_leader");
    v.profit_follower = rational_from_json(entry.at("profit_follower"), where + ".profit_follower");
    v.penalty_rate = rational_from_json(entry.at("penalty_rate"), where + ".penalty_rate");
    v.score_valuation = rational_from_json(entry.at("score_valuation"), where + ".score_valuation");
    vehicles.push_back(v);
  }

  try {
    return Scenario(std::move(vehicles),
                    rational_from_json(doc.at("standard_profit_leader"), "scenario.standard_profit_leader"),
                    rational_from_json(doc.at("standard_profit_follower"), "scenario.standard_profit_follower"));
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

json leader_assignment_to_json(const LeaderAssignment& leaders) {
  json by_time = json::array();
  for (const auto& [time, id] : leaders.leader_by_time) {
    by_time.push_back({{"time", time}, {"leader", id}});
  }
  return json{{"randomly_drawn", leaders.randomly_drawn}, {"by_time", std::move(by_time)}};
}

json market_assignment_to_json(const MarketAssignment& assignment) {
  json prices = json::array();
  for (int id : assignment.market.sellers) {
    prices.push_back({{"seller", id}, {"price", rational_to_json(assignment.market.prices.at(id))}});
  }
  return json{
      {"sellers", assignment.market.sellers},
      {"buyers", assignment.market.buyers},
      {"prices", std::move(prices)},
      {"demotions", assignment.demotions},
      {"price_sweeps", assignment.price_sweeps},
      {"converged", assignment.converged},
      {"cycle_detected", assignment.cycle_detected},
  };
}

namespace {

json rationals_to_json(const std::vector<Rational>& values) {
  json array = json::array();
  for (const Rational& value : values) array.push_back(rational_to_json(value));
  return array;
}

}  // namespace

json run_record_to_json(const RunRecord& record) {
  const RunMetrics& m = record.metrics;
  json doc{
      {"model", to_string(m.model)},
      {"n", m.n},
      {"scenario_seed", m.scenario_seed},
      {"model_seed", m.model_seed},
      {"profile", record.profile.departures},
      {"utilities", rationals_to_json(record.utilities)},
      {"average_utility", rational_to_json(m.average_utility)},
      {"follower_pct", rational_to_json(m.follower_pct)},
      {"followers", m.followers},
      {"leaders", m.leaders},
      {"solos", m.solos},
      {"platoons", m.platoons},
      {"leader_assignment", leader_assignment_to_json(record.leaders)},
      {"convergence",
       {{"converged", m.convergence.converged},
        {"cycle_detected", m.convergence.cycle_detected},
        {"sweeps", m.convergence.sweeps}}},
  };
  if (record.scores_initial) doc["scores_initial"] = rationals_to_json(record.scores_initial->values());
  if (record.scores_after) doc["scores_after"] = rationals_to_json(record.scores_after->values());
  if (record.market) doc["market"] = market_assignment_to_json(*record.market);
  return doc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("\"" + path + "\": " + e.what());
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw ConfigError("cannot write \"" + path + "\"");
}

}  // namespace platoon
