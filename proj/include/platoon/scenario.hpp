#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "platoon/rational.hpp"

namespace platoon {

// One truck waiting at the origin. Ids are 1-based and contiguous within a
// scenario. Departure times are integer minutes; a vehicle may depart at its
// default time or later, never earlier.
struct Vehicle {
  int id = 0;
  int default_departure = 0;
  int max_delay = 0;        // minutes of acceptable delay past the default
  Money profit_leader;      // platooning profit when leading
  Money profit_follower;    // platooning profit when following
  Money penalty_rate;       // SEK per minute of delay
  Money score_valuation;    // SEK per score unit (score-system model)
};

class Scenario {
 public:
  Scenario(std::vector<Vehicle> vehicles, Money standard_profit_leader, Money standard_profit_follower);

  int size() const { return static_cast<int>(vehicles_.size()); }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  const Vehicle& vehicle(int id) const;  // throws std::domain_error on unknown id
  // All default departure times, indexed by id-1 (a multiset: collisions allowed).
  const std::vector<int>& default_times() const { return default_times_; }

  // Fleet-wide standard profits used by the even-out transfer.
  Money standard_profit_leader() const { return standard_leader_; }
  Money standard_profit_follower() const { return standard_follower_; }

  // Non-fatal oddities found at construction (e.g. a vehicle whose leader
  // profit exceeds its follower profit).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<Vehicle> vehicles_;
  std::vector<int> default_times_;
  Money standard_leader_;
  Money standard_follower_;
  std::vector<std::string> warnings_;
};

// A joint decision: one departure time per vehicle, indexed by id-1.
struct DepartureProfile {
  std::vector<int> departures;

  int at(int id) const { return departures.at(static_cast<std::size_t>(id) - 1); }
  friend bool operator==(const DepartureProfile&, const DepartureProfile&) = default;
};

// D_i: default times reachable from vehicle i's window [d*, d* + max_delay],
// ascending, duplicates collapsed. Always contains the vehicle's own default.
std::vector<int> feasible_departures(const Vehicle& vehicle, const Scenario& scenario);
std::vector<int> feasible_departures(int id, const Scenario& scenario);

// Vehicles departing at vehicle id's *default* time under the given profile;
// empty when everyone (including id itself) departs elsewhere.
std::vector<int> platoon_members(const DepartureProfile& profile, int id, const Scenario& scenario);

// Ids grouped by chosen departure time (every group nonempty).
std::map<int, std::vector<int>> departure_groups(std::span<const int> departures);
inline std::map<int, std::vector<int>> departure_groups(const DepartureProfile& profile) {
  return departure_groups(std::span<const int>(profile.departures));
}

// Linear delay cost: rate * (departure - default). Departing early is a
// domain error.
Money time_penalty(const Vehicle& vehicle, int departure);

// Throws std::domain_error unless every vehicle departs at a feasible time.
void validate_profile(const DepartureProfile& profile, const Scenario& scenario);

// Economics behind the default fleet: platooning profit is the fuel saved
// over the trip, priced per liter.
struct EconomicsConfig {
  Rational distance_km = 200;
  Rational liters_per_km = Rational(35, 100);
  Rational fuel_price_sek_per_liter = 15;
  Rational follower_saving = Rational(10, 100);
  Rational leader_saving = 0;
  Money penalty_rate_sek_per_min = 10;
  Rational beta_fraction = Rational(1, 4);  // score valuation = fraction * follower profit
  std::vector<Rational> price_grid_fractions = {Rational(1, 5), Rational(2, 5), Rational(3, 5),
                                                Rational(4, 5)};

  Money follower_profit() const;
  Money leader_profit() const;
};

struct FleetConfig {
  int n = 10;
  int window_start = 0;  // default departures drawn uniformly on
  int window_end = 30;   // {window_start, ..., window_end}
  int max_delay = 10;
};

// Seeded fleet draw: identical (config, seed) pairs yield identical scenarios.
Scenario generate_scenario(const FleetConfig& fleet, const EconomicsConfig& economics, std::uint64_t seed);

}  // namespace platoon
