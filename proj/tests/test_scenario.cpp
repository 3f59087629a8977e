#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "platoon/scenario.hpp"

using namespace platoon;

namespace {

// Independent oracle for feasible departure sets: filter every fleet default
// through the window and dedupe, always keeping the vehicle's own default.
std::vector<int> feasible_by_filter(const Vehicle& v, const Scenario& scenario) {
  std::set<int> times{v.default_departure};
  for (int t : scenario.default_times()) {
    if (t >= v.default_departure && t <= v.default_departure + v.max_delay) times.insert(t);
  }
  return {times.begin(), times.end()};
}

}  // namespace

TEST_CASE("default economics derive the standard profits") {
  EconomicsConfig economics;
  CHECK(economics.follower_profit() == Money(105));  // 200 km * 0.35 L/km * 15 SEK/L * 10%
  CHECK(economics.leader_profit() == Money(0));

  economics.leader_saving = Rational(5, 100);
  CHECK(economics.leader_profit() == Rational(105, 2));
}

TEST_CASE("feasible departures intersect the delay window with fleet defaults") {
  Scenario three = testing::fleet({0, 1, 15});
  CHECK(feasible_departures(1, three) == std::vector<int>{0, 1});
  CHECK(feasible_departures(2, three) == std::vector<int>{1});  // 15 is out of reach

  Scenario pinned = testing::fleet({5, 7}, 0);
  CHECK(feasible_departures(1, pinned) == std::vector<int>{5});

  Scenario edges = testing::fleet({0, 30});
  CHECK(feasible_departures(2, edges) == std::vector<int>{30});
}

TEST_CASE("feasible departures match the exhaustive filter oracle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    FleetConfig fleet;
    fleet.n = 12;
    Scenario scenario = generate_scenario(fleet, EconomicsConfig{}, seed);
    for (const Vehicle& v : scenario.vehicles()) {
      CHECK(feasible_departures(v, scenario) == feasible_by_filter(v, scenario));
    }
  }
}

TEST_CASE("platoon members are the vehicles at the member's default time") {
  Scenario scenario = testing::fleet({0, 1, 5});
  DepartureProfile profile{{1, 1, 5}};
  CHECK(platoon_members(profile, 2, scenario) == std::vector<int>{1, 2});
  CHECK(platoon_members(profile, 1, scenario).empty());  // nobody departs at time 0
  CHECK(platoon_members(profile, 3, scenario) == std::vector<int>{3});

  Scenario solo = testing::fleet({4});
  CHECK(platoon_members(DepartureProfile{{4}}, 1, solo) == std::vector<int>{1});
}

TEST_CASE("departure groups partition the fleet by chosen time") {
  auto groups = departure_groups(DepartureProfile{{1, 1, 5, 9}});
  REQUIRE(groups.size() == 3);
  CHECK(groups.at(1) == std::vector<int>{1, 2});
  CHECK(groups.at(5) == std::vector<int>{3});
  CHECK(groups.at(9) == std::vector<int>{4});

  int members = 0;
  for (const auto& [time, ids] : groups) {
    CHECK_FALSE(ids.empty());
    members += static_cast<int>(ids.size());
  }
  CHECK(members == 4);
}

TEST_CASE("time penalty is linear in the delay and rejects early departures") {
  Vehicle v = testing::vehicle(1, 5);
  CHECK(time_penalty(v, 5) == Money(0));
  CHECK(time_penalty(v, 12) == Money(70));

  v.penalty_rate = 0;
  CHECK(time_penalty(v, 9) == Money(0));

  CHECK_THROWS_AS(time_penalty(testing::vehicle(1, 5), 4), std::domain_error);
}

TEST_CASE("profile validation rejects early and out-of-window departures") {
  Scenario scenario = testing::fleet({0, 3});
  CHECK_NOTHROW(validate_profile(DepartureProfile{{3, 3}}, scenario));
  CHECK_THROWS_AS(validate_profile(DepartureProfile{{0, 2}}, scenario), std::domain_error);   // early
  CHECK_THROWS_AS(validate_profile(DepartureProfile{{11, 3}}, scenario), std::domain_error);  // past window
  CHECK_THROWS_AS(validate_profile(DepartureProfile{{0}}, scenario), std::domain_error);      // wrong arity
}

TEST_CASE("generated scenarios are deterministic in the seed") {
  FleetConfig fleet;
  fleet.n = 15;
  EconomicsConfig economics;

  Scenario a = generate_scenario(fleet, economics, 42);
  Scenario b = generate_scenario(fleet, economics, 42);
  REQUIRE(a.size() == 15);
  CHECK(a.default_times() == b.default_times());

  Scenario c = generate_scenario(fleet, economics, 43);
  CHECK(a.default_times() != c.default_times());
}

TEST_CASE("generated vehicles stay inside the configured window") {
  FleetConfig fleet;
  fleet.n = 40;
  fleet.window_start = 5;
  fleet.window_end = 12;
  fleet.max_delay = 3;
  Scenario scenario = generate_scenario(fleet, EconomicsConfig{}, 7);

  REQUIRE(scenario.size() == 40);
  for (const Vehicle& v : scenario.vehicles()) {
    CHECK(v.default_departure >= 5);
    CHECK(v.default_departure <= 12);
    CHECK(v.max_delay == 3);
    CHECK(v.profit_follower == Money(105));
    CHECK(v.profit_leader == Money(0));
    CHECK(v.penalty_rate == Money(10));
    CHECK(v.score_valuation == Rational(105, 4));
  }
  CHECK(scenario.standard_profit_follower() == Money(105));
  CHECK(scenario.standard_profit_leader() == Money(0));
}

TEST_CASE("vehicle lookup is by id and rejects unknown ids") {
  Scenario scenario = testing::fleet({0, 1, 5});
  CHECK(scenario.vehicle(2).default_departure == 1);
  CHECK_THROWS_AS(scenario.vehicle(0), std::domain_error);
  CHECK_THROWS_AS(scenario.vehicle(4), std::domain_error);
}

TEST_CASE("a leader profit above the follower profit is flagged, not fatal") {
  Vehicle odd = testing::vehicle(1, 0);
  odd.profit_leader = 200;
  Scenario scenario({odd, testing::vehicle(2, 1)}, 0, 105);
  CHECK_FALSE(scenario.warnings().empty());
}
