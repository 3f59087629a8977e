#include "platoon/games.hpp"

namespace platoon {
namespace {

std::vector<std::vector<int>> all_feasible_departures(const Scenario& scenario) {
  std::vector<std::vector<int>> spaces;
  spaces.reserve(static_cast<std::size_t>(scenario.size()));
  for (int id = 1; id <= scenario.size(); ++id) {
    spaces.push_back(feasible_departures(id, scenario));
  }
  return spaces;
}

}  // namespace

TimeGame make_even_out_game(const Scenario& scenario) {
  TimeGame game;
  game.decision_spaces = all_feasible_departures(scenario);
  game.utility = [&scenario](int player, const std::vector<int>& profile) {
    return utility_even_out(player + 1, std::span<const int>(profile), scenario);
  };
  return game;
}

TimeGame make_score_game(const Scenario& scenario, const ScoreState& scores) {
  TimeGame game;
  game.decision_spaces = all_feasible_departures(scenario);
  game.utility = [&scenario, &scores](int player, const std::vector<int>& profile) {
    return utility_score(player + 1, std::span<const int>(profile), scores, scenario);
  };
  return game;
}

TimeGame make_cooperative_game(const Scenario& scenario) {
  TimeGame game;
  game.decision_spaces = all_feasible_departures(scenario);
  // Every player maximizes the same fleet-wide utility.
  game.utility = [&scenario](int, const std::vector<int>& profile) {
    return utility_cooperative(std::span<const int>(profile), scenario);
  };
  return game;
}

DepartureProfile default_profile(const Scenario& scenario) {
  return DepartureProfile{scenario.default_times()};
}

std::pair<DepartureProfile, Money> social_optimum(const Scenario& scenario, std::uint64_t cap) {
  TimeGame game = make_cooperative_game(scenario);
  if (profile_count(game, cap) > cap) {
    throw EnumerationCapExceeded("profile space exceeds enumeration cap");
  }
  DepartureProfile best;
  Money best_value;
  bool first = true;
  for_each_profile(game, [&](const std::vector<int>& profile) {
    const Money value = utility_cooperative(std::span<const int>(profile), scenario);
    // Strict improvement keeps the first (lexicographically smallest) maximizer.
    if (first || value > best_value) {
      best.departures = profile;
      best_value = value;
      first = false;
    }
  });
  return {best, best_value};
}

}  // namespace platoon
