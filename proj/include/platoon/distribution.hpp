#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "platoon/scenario.hpp"

namespace platoon {

// Persistent per-vehicle scores for the score-system model. Scores are kept
// pairwise distinct: colliding values are nudged up by 1e-9 score units per
// step, lower ids first.
class ScoreState {
 public:
  explicit ScoreState(std::vector<Rational> scores);
  // n i.i.d. uniform draws on [0,1) with 1e-9 resolution, redrawn on collision.
  static ScoreState uniform_random(int n, std::uint64_t seed);

  int size() const { return static_cast<int>(scores_.size()); }
  const Rational& of(int id) const { return scores_.at(static_cast<std::size_t>(id) - 1); }
  const std::vector<Rational>& values() const { return scores_; }

 private:
  std::vector<Rational> scores_;
};

// Score movement for one platooning event in a platoon of size n: the leader
// gains (n-1)/n and each follower loses 1/n, so the leader's gain equals the
// sum of its followers' losses.
struct ScoreUpdate {
  Rational leader_gain;
  Rational follower_loss;
};
ScoreUpdate score_updates(int platoon_size);

// Leader per occupied departure time, for platoons of size >= 2 only. Solo
// vehicles carry no role.
struct LeaderAssignment {
  std::map<int, int> leader_by_time;
  bool randomly_drawn = false;
};

// Post-transfer profits under the even-out standardized agreement.
Money transaction_profit_leader(const Vehicle& vehicle, int platoon_size, const Scenario& scenario);
Money transaction_profit_follower(const Vehicle& vehicle, int platoon_size, const Scenario& scenario);

// Even out: leader drawn uniformly at random, so the utility is the expected
// post-transfer profit minus the delay penalty.
Money utility_even_out(int id, std::span<const int> departures, const Scenario& scenario);
inline Money utility_even_out(int id, const DepartureProfile& profile, const Scenario& scenario) {
  return utility_even_out(id, std::span<const int>(profile.departures), scenario);
}

// Score system: lowest score in the platoon leads.
int score_leader(const std::vector<int>& members, const ScoreState& scores);
Money utility_score(int id, std::span<const int> departures, const ScoreState& scores, const Scenario& scenario);
inline Money utility_score(int id, const DepartureProfile& profile, const ScoreState& scores,
                           const Scenario& scenario) {
  return utility_score(id, std::span<const int>(profile.departures), scores, scenario);
}
ScoreState apply_score_updates(const DepartureProfile& profile, const ScoreState& scores,
                               const Scenario& scenario);
LeaderAssignment score_leaders(const DepartureProfile& profile, const ScoreState& scores);

// Cooperative: one shared utility; each platoon is led by the member with the
// smallest follower-minus-leader profit gap (ties to the lowest id).
int cooperative_leader(const std::vector<int>& members, const Scenario& scenario);
Money utility_cooperative(std::span<const int> departures, const Scenario& scenario);
inline Money utility_cooperative(const DepartureProfile& profile, const Scenario& scenario) {
  return utility_cooperative(std::span<const int>(profile.departures), scenario);
}
LeaderAssignment cooperative_leaders(const DepartureProfile& profile, const Scenario& scenario);

// Per-vehicle share of the cooperative utility: platoon profit (leader or
// follower rate) minus own penalty; sums to utility_cooperative.
std::vector<Money> cooperative_contributions(const DepartureProfile& profile, const Scenario& scenario);

// Seeded uniform leader draw; reporting only (the even-out utility is the
// expectation over this draw, never a sample of it).
LeaderAssignment draw_leaders(const DepartureProfile& profile, std::uint64_t seed);

// No coordination: everyone departs at its default and co-timed vehicles
// platoon by accident, valued with the even-out utility.
struct SpontaneousOutcome {
  DepartureProfile profile;
  std::vector<Money> utilities;
};
SpontaneousOutcome spontaneous_outcome(const Scenario& scenario);

}  // namespace platoon
