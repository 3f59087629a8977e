#include "platoon/distribution.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "platoon/rng.hpp"

namespace platoon {
namespace {

constexpr std::int64_t kScoreResolution = 1'000'000'000;
const Rational kScoreEpsilon(1, kScoreResolution);

int platoon_size_at(std::span<const int> departures, int time) {
  int n = 0;
  for (int t : departures) {
    if (t == time) ++n;
  }
  return n;
}

std::vector<int> members_at(std::span<const int> departures, int time) {
  std::vector<int> members;
  for (std::size_t k = 0; k < departures.size(); ++k) {
    if (departures[k] == time) members.push_back(static_cast<int>(k) + 1);
  }
  return members;
}

}  // namespace

ScoreState::ScoreState(std::vector<Rational> scores) : scores_(std::move(scores)) {
  std::set<Rational> used;
  for (Rational& s : scores_) {
    while (used.contains(s)) s += kScoreEpsilon;
    used.insert(s);
  }
}

ScoreState ScoreState::uniform_random(int n, std::uint64_t seed) {
  if (n < 0) throw std::domain_error("negative score count");
  Rng rng(seed);
  std::set<Rational> used;
  std::vector<Rational> scores;
  scores.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rational s;
    do {
      s = Rational(rng.uniform_int(0, kScoreResolution - 1), kScoreResolution);
    } while (used.contains(s));
    used.insert(s);
    scores.push_back(s);
  }
  return ScoreState(std::move(scores));
}

ScoreUpdate score_updates(int platoon_size) {
  if (platoon_size <= 1) throw std::domain_error("score updates require a platoon of at least 2");
  return {Rational(platoon_size - 1, platoon_size), Rational(1, platoon_size)};
}

Money transaction_profit_leader(const Vehicle& vehicle, int platoon_size, const Scenario& scenario) {
  if (platoon_size <= 1) throw std::domain_error("transaction requires a platoon of at least 2");
  const Money transfer = scenario.standard_profit_follower() - scenario.standard_profit_leader();
  return vehicle.profit_leader + Rational(platoon_size - 1, platoon_size) * transfer;
}

Money transaction_profit_follower(const Vehicle& vehicle, int platoon_size, const Scenario& scenario) {
  if (platoon_size <= 1) throw std::domain_error("transaction requires a platoon of at least 2");
  const Money transfer = scenario.standard_profit_follower() - scenario.standard_profit_leader();
  return vehicle.profit_follower - Rational(1, platoon_size) * transfer;
}

Money utility_even_out(int id, std::span<const int> departures, const Scenario& scenario) {
  const Vehicle& v = scenario.vehicle(id);
  const int t = departures[static_cast<std::size_t>(id) - 1];
  const Money penalty = time_penalty(v, t);
  const int n = platoon_size_at(departures, t);
  if (n <= 1) return -penalty;
  // Expected post-transfer profit under the uniform leader draw; the standard
  // profits cancel out of the expectation.
  return Rational(1, n) * v.profit_leader + Rational(n - 1, n) * v.profit_follower - penalty;
}

int score_leader(const std::vector<int>& members, const ScoreState& scores) {
  if (members.size() < 2) throw std::domain_error("score leader requires a platoon of at least 2");
  int leader = members.front();
  for (int id : members) {
    if (scores.of(id) < scores.of(leader)) leader = id;
  }
  return leader;
}

Money utility_score(int id, std::span<const int> departures, const ScoreState& scores,
                    const Scenario& scenario) {
  const Vehicle& v = scenario.vehicle(id);
  const int t = departures[static_cast<std::size_t>(id) - 1];
  const Money penalty = time_penalty(v, t);
  const auto members = members_at(departures, t);
  const int n = static_cast<int>(members.size());
  if (n <= 1) return -penalty;
  const ScoreUpdate update = score_updates(n);
  if (score_leader(members, scores) == id) {
    return v.profit_leader - penalty + v.score_valuation * update.leader_gain;
  }
  return v.profit_follower - penalty - v.score_valuation * update.follower_loss;
}

ScoreState apply_score_updates(const DepartureProfile& profile, const ScoreState& scores,
                               const Scenario& scenario) {
  if (scores.size() != scenario.size()) throw std::domain_error("score state size mismatch");
  std::vector<Rational> next(scores.values());
  for (const auto& [time, members] : departure_groups(profile)) {
    const int n = static_cast<int>(members.size());
    if (n <= 1) continue;
    const ScoreUpdate update = score_updates(n);
    const int leader = score_leader(members, scores);
    for (int id : members) {
      auto& s = next[static_cast<std::size_t>(id) - 1];
      s = (id == leader) ? s + update.leader_gain : s - update.follower_loss;
    }
  }
  return ScoreState(std::move(next));  // re-enforces distinctness
}

LeaderAssignment score_leaders(const DepartureProfile& profile, const ScoreState& scores) {
  LeaderAssignment assignment;
  for (const auto& [time, members] : departure_groups(profile)) {
    if (members.size() >= 2) assignment.leader_by_time[time] = score_leader(members, scores);
  }
  return assignment;
}

int cooperative_leader(const std::vector<int>& members, const Scenario& scenario) {
  if (members.size() < 2) throw std::domain_error("cooperative leader requires a platoon of at least 2");
  int leader = 0;
  Money best_gap;
  for (int id : members) {  // ascending ids: ties keep the lowest
    const Vehicle& v = scenario.vehicle(id);
    const Money gap = v.profit_follower - v.profit_leader;
    if (leader == 0 || gap < best_gap) {
      leader = id;
      best_gap = gap;
    }
  }
  return leader;
}

Money utility_cooperative(std::span<const int> departures, const Scenario& scenario) {
  Money total;
  for (const auto& [time, members] : departure_groups(departures)) {
    const int n = static_cast<int>(members.size());
    const int leader = n >= 2 ? cooperative_leader(members, scenario) : 0;
    for (int id : members) {
      const Vehicle& v = scenario.vehicle(id);
      if (n >= 2) total += (id == leader) ? v.profit_leader : v.profit_follower;
      total -= time_penalty(v, departures[static_cast<std::size_t>(id) - 1]);
    }
  }
  return total;
}

LeaderAssignment cooperative_leaders(const DepartureProfile& profile, const Scenario& scenario) {
  LeaderAssignment assignment;
  for (const auto& [time, members] : departure_groups(profile)) {
    if (members.size() >= 2) assignment.leader_by_time[time] = cooperative_leader(members, scenario);
  }
  return assignment;
}

std::vector<Money> cooperative_contributions(const DepartureProfile& profile, const Scenario& scenario) {
  std::vector<Money> shares(static_cast<std::size_t>(scenario.size()));
  for (const auto& [time, members] : departure_groups(profile)) {
    const int n = static_cast<int>(members.size());
    const int leader = n >= 2 ? cooperative_leader(members, scenario) : 0;
    for (int id : members) {
      const Vehicle& v = scenario.vehicle(id);
      Money share;
      if (n >= 2) share = (id == leader) ? v.profit_leader : v.profit_follower;
      share -= time_penalty(v, profile.at(id));
      shares[static_cast<std::size_t>(id) - 1] = share;
    }
  }
  return shares;
}

LeaderAssignment draw_leaders(const DepartureProfile& profile, std::uint64_t seed) {
  Rng rng(seed);
  LeaderAssignment assignment;
  assignment.randomly_drawn = true;
  for (const auto& [time, members] : departure_groups(profile)) {
    if (members.size() >= 2) {
      auto pick = rng.uniform_int(0, static_cast<std::int64_t>(members.size()) - 1);
      assignment.leader_by_time[time] = members[static_cast<std::size_t>(pick)];
    }
  }
  return assignment;
}

SpontaneousOutcome spontaneous_outcome(const Scenario& scenario) {
  SpontaneousOutcome outcome;
  outcome.profile.departures = scenario.default_times();
  outcome.utilities.reserve(static_cast<std::size_t>(scenario.size()));
  for (int id = 1; id <= scenario.size(); ++id) {
    outcome.utilities.push_back(utility_even_out(id, outcome.profile, scenario));
  }
  return outcome;
}

}  // namespace platoon
