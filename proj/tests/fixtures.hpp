#pragma once

// Hand-rolled fleets for tests. Defaults mirror the standard setup: follower
// profit 105 SEK, leader profit 0, 10 SEK/min penalty, score valuation 26.25.
#include <utility>
#include <vector>

#include "platoon/scenario.hpp"

namespace platoon::testing {

inline Vehicle vehicle(int id, int default_departure, int max_delay = 10) {
  Vehicle v;
  v.id = id;
  v.default_departure = default_departure;
  v.max_delay = max_delay;
  v.profit_leader = 0;
  v.profit_follower = 105;
  v.penalty_rate = 10;
  v.score_valuation = Rational(105, 4);
  return v;
}

// Homogeneous fleet with ids 1..n over the given default times.
inline Scenario fleet(const std::vector<int>& defaults, int max_delay = 10) {
  std::vector<Vehicle> vehicles;
  vehicles.reserve(defaults.size());
  for (std::size_t i = 0; i < defaults.size(); ++i) {
    vehicles.push_back(vehicle(static_cast<int>(i) + 1, defaults[i], max_delay));
  }
  return Scenario(std::move(vehicles), 0, 105);
}

}  // namespace platoon::testing
