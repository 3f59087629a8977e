#include "platoon/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "platoon/rng.hpp"

namespace platoon {

Scenario::Scenario(std::vector<Vehicle> vehicles, Money standard_profit_leader, Money standard_profit_follower)
    : vehicles_(std::move(vehicles)),
      standard_leader_(standard_profit_leader),
      standard_follower_(standard_profit_follower) {
  if (vehicles_.empty()) throw std::domain_error("scenario requires at least one vehicle");
  default_times_.reserve(vehicles_.size());
  for (std::size_t k = 0; k < vehicles_.size(); ++k) {
    const Vehicle& v = vehicles_[k];
    if (v.id != static_cast<int>(k) + 1) {
      throw std::domain_error("vehicle ids must be contiguous 1..N; got id " + std::to_string(v.id) +
                              " at position " + std::to_string(k + 1));
    }
    if (v.max_delay < 0) throw std::domain_error("vehicle " + std::to_string(v.id) + ": max_delay < 0");
    if (v.penalty_rate < Money(0)) {
      throw std::domain_error("vehicle " + std::to_string(v.id) + ": penalty_rate < 0");
    }
    if (v.profit_follower < v.profit_leader) {
      warnings_.push_back("vehicle " + std::to_string(v.id) +
                          ": leader profit exceeds follower profit (atypical)");
    }
    default_times_.push_back(v.default_departure);
  }
}

const Vehicle& Scenario::vehicle(int id) const {
  if (id < 1 || id > size()) {
    throw std::domain_error("unknown vehicle id " + std::to_string(id));
  }
  return vehicles_[static_cast<std::size_t>(id) - 1];
}

std::vector<int> feasible_departures(const Vehicle& vehicle, const Scenario& scenario) {
  const Vehicle& v = scenario.vehicle(vehicle.id);  // also rejects unknown ids
  std::vector<int> options;
  for (int t : scenario.default_times()) {
    if (t >= v.default_departure && t <= v.default_departure + v.max_delay) {
      options.push_back(t);
    }
  }
  std::sort(options.begin(), options.end());
  options.erase(std::unique(options.begin(), options.end()), options.end());
  return options;
}

std::vector<int> feasible_departures(int id, const Scenario& scenario) {
  return feasible_departures(scenario.vehicle(id), scenario);
}

std::vector<int> platoon_members(const DepartureProfile& profile, int id, const Scenario& scenario) {
  const int at_default = scenario.vehicle(id).default_departure;
  std::vector<int> members;
  for (int k = 1; k <= scenario.size(); ++k) {
    if (profile.at(k) == at_default) members.push_back(k);
  }
  return members;
}

std::map<int, std::vector<int>> departure_groups(std::span<const int> departures) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t k = 0; k < departures.size(); ++k) {
    groups[departures[k]].push_back(static_cast<int>(k) + 1);
  }
  return groups;
}

Money time_penalty(const Vehicle& vehicle, int departure) {
  if (departure < vehicle.default_departure) {
    throw std::domain_error("vehicle " + std::to_string(vehicle.id) + " cannot depart before its default");
  }
  return vehicle.penalty_rate * Money(departure - vehicle.default_departure);
}

void validate_profile(const DepartureProfile& profile, const Scenario& scenario) {
  if (static_cast<int>(profile.departures.size()) != scenario.size()) {
    throw std::domain_error("profile has " + std::to_string(profile.departures.size()) +
                            " departures for " + std::to_string(scenario.size()) + " vehicles");
  }
  for (int id = 1; id <= scenario.size(); ++id) {
    auto options = feasible_departures(id, scenario);
    if (!std::binary_search(options.begin(), options.end(), profile.at(id))) {
      throw std::domain_error("vehicle " + std::to_string(id) + ": departure " +
                              std::to_string(profile.at(id)) + " is not a feasible time");
    }
  }
}

Money EconomicsConfig::follower_profit() const {
  return distance_km * liters_per_km * fuel_price_sek_per_liter * follower_saving;
}

Money EconomicsConfig::leader_profit() const {
  return distance_km * liters_per_km * fuel_price_sek_per_liter * leader_saving;
}

Scenario generate_scenario(const FleetConfig& fleet, const EconomicsConfig& economics, std::uint64_t seed) {
  if (fleet.n < 1) throw std::domain_error("fleet size must be at least 1");
  if (fleet.window_end < fleet.window_start) {
    throw std::domain_error("departure window is empty");
  }
  if (fleet.max_delay < 0) throw std::domain_error("max_delay < 0");

  const Money follower = economics.follower_profit();
  const Money leader = economics.leader_profit();
  const Money beta = economics.beta_fraction * follower;

  Rng rng(seed);
  std::vector<Vehicle> vehicles;
  vehicles.reserve(static_cast<std::size_t>(fleet.n));
  for (int id = 1; id <= fleet.n; ++id) {
    Vehicle v;
    v.id = id;
    v.default_departure = static_cast<int>(rng.uniform_int(fleet.window_start, fleet.window_end));
    v.max_delay = fleet.max_delay;
    v.profit_leader = leader;
    v.profit_follower = follower;
    v.penalty_rate = economics.penalty_rate_sek_per_min;
    v.score_valuation = beta;
    vehicles.push_back(v);
  }
  return Scenario(std::move(vehicles), leader, follower);
}

}  // namespace platoon
