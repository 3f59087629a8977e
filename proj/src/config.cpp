#include "platoon/config.hpp"

namespace platoon {

using nlohmann::json;

namespace {

int int_field(const json& object, const std::string& where, const std::string& key, int fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return value.get<int>();
}

std::uint64_t seed_field(const json& object, const std::string& where, const std::string& key,
                         std::uint64_t fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number_unsigned() && !value.is_number_integer()) {
    throw ConfigError(where + "." + key + ": expected an integer seed");
  }
  if (value.is_number_integer() && value.get<std::int64_t>() < 0) {
    throw ConfigError(where + "." + key + ": seed must be nonnegative");
  }
  return value.get<std::uint64_t>();
}

Rational rational_field(const json& object, const std::string& where, const std::string& key,
                        const Rational& fallback) {
  if (!object.contains(key)) return fallback;
  return rational_from_json(object.at(key), where + "." + key);
}

void parse_economics(const json& doc, EconomicsConfig& economics) {
  if (!doc.contains("economics")) return;
  const json& section = doc.at("economics");
  const std::string where = "economics";
  check_keys(section, where,
             {"distance_km", "liters_per_km", "fuel_price_sek_per_liter", "follower_saving",
              "leader_saving", "penalty_rate_sek_per_min", "beta_fraction", "price_grid_fractions"});
  economics.distance_km = rational_field(section, where, "distance_km", economics.distance_km);
  economics.liters_per_km = rational_field(section, where, "liters_per_km", economics.liters_per_km);
  economics.fuel_price_sek_per_liter =
      rational_field(section, where, "fuel_price_sek_per_liter", economics.fuel_price_sek_per_liter);
  economics.follower_saving = rational_field(section, where, "follower_saving", economics.follower_saving);
  economics.leader_saving = rational_field(section, where, "leader_saving", economics.leader_saving);
  economics.penalty_rate_sek_per_min =
      rational_field(section, where, "penalty_rate_sek_per_min", economics.penalty_rate_sek_per_min);
  economics.beta_fraction = rational_field(section, where, "beta_fraction", economics.beta_fraction);
  if (section.contains("price_grid_fractions")) {
    const json& fractions = section.at("price_grid_fractions");
    if (!fractions.is_array() || fractions.empty()) {
      throw ConfigError("economics.price_grid_fractions: expected a nonempty array");
    }
    economics.price_grid_fractions.clear();
    for (const json& f : fractions) {
      economics.price_grid_fractions.push_back(
          rational_from_json(f, "economics.price_grid_fractions"));
    }
  }
}

void parse_fleet(const json& doc, FleetConfig& fleet) {
  if (!doc.contains("fleet")) return;
  const json& section = doc.at("fleet");
  const std::string where = "fleet";
  check_keys(section, where, {"n", "window_start", "window_end", "max_delay"});
  fleet.n = int_field(section, where, "n", fleet.n);
  fleet.window_start = int_field(section, where, "window_start", fleet.window_start);
  fleet.window_end = int_field(section, where, "window_end", fleet.window_end);
  fleet.max_delay = int_field(section, where, "max_delay", fleet.max_delay);
}

void parse_model(const json& doc, ModelConfig& model) {
  if (!doc.contains("model")) return;
  const json& section = doc.at("model");
  const std::string where = "model";
  check_keys(section, where, {"name", "scenario_file", "scores", "max_sweeps", "enumeration_cap"});
  if (section.contains("name")) {
    if (!section.at("name").is_string()) throw ConfigError("model.name: expected a string");
    const std::string name = section.at("name").get<std::string>();
    auto parsed = platoon::parse_model(name);
    if (!parsed) throw ConfigError("model.name: unknown model \"" + name + "\"");
    model.name = *parsed;
  }
  if (section.contains("scenario_file")) {
    if (!section.at("scenario_file").is_string()) {
      throw ConfigError("model.scenario_file: expected a path string");
    }
    model.scenario_file = section.at("scenario_file").get<std::string>();
  }
  if (section.contains("scores")) {
    const json& scores = section.at("scores");
    if (!scores.is_array()) throw ConfigError("model.scores: expected an array");
    for (const json& s : scores) model.scores.push_back(rational_from_json(s, "model.scores"));
  }
  model.max_sweeps = int_field(section, where, "max_sweeps", model.max_sweeps);
  if (section.contains("enumeration_cap")) {
    model.enumeration_cap = seed_field(section, where, "enumeration_cap", model.enumeration_cap);
  }
}

void parse_sweep(const json& doc, SweepConfig& sweep) {
  if (!doc.contains("sweep")) return;
  const json& section = doc.at("sweep");
  const std::string where = "sweep";
  check_keys(section, where, {"n_min", "n_max", "runs", "models", "max_sweeps"});
  sweep.n_min = int_field(section, where, "n_min", sweep.n_min);
  sweep.n_max = int_field(section, where, "n_max", sweep.n_max);
  sweep.runs = int_field(section, where, "runs", sweep.runs);
  sweep.max_sweeps = int_field(section, where, "max_sweeps", sweep.max_sweeps);
  if (section.contains("models")) {
    const json& models = section.at("models");
    if (!models.is_array() || models.empty()) {
      throw ConfigError("sweep.models: expected a nonempty array");
    }
    sweep.models.clear();
    for (const json& m : models) {
      if (!m.is_string()) throw ConfigError("sweep.models: expected model-name strings");
      auto parsed = platoon::parse_model(m.get<std::string>());
      if (!parsed) throw ConfigError("sweep.models: unknown model \"" + m.get<std::string>() + "\"");
      sweep.models.push_back(*parsed);
    }
  }
}

}  // namespace

AppConfig app_config_from_json(const json& doc) {
  AppConfig config;
  check_keys(doc, "config", {"seed", "economics", "fleet", "model", "sweep"});
  config.seed = seed_field(doc, "config", "seed", config.seed);
  parse_economics(doc, config.economics);
  parse_fleet(doc, config.fleet);
  parse_model(doc, config.model);
  parse_sweep(doc, config.sweep);

  config.sweep.base_seed = config.seed;
  config.sweep.fleet = config.fleet;
  config.sweep.economics = config.economics;
  return config;
}

AppConfig load_app_config(const std::string& path) {
  return app_config_from_json(load_json_file(path));
}

}  // namespace platoon
