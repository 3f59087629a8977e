#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "platoon/rational.hpp"

namespace platoon {

// A finite game in normal form: players 0..P-1, each with a nonempty ordered
// decision set and a utility over joint profiles. Decisions are departure
// times (int) for the timing games and prices (Money) for the pricing game.
template <class Decision>
struct Game {
  std::vector<std::vector<Decision>> decision_spaces;  // ascending per player
  std::function<Money(int player, const std::vector<Decision>& profile)> utility;

  int players() const { return static_cast<int>(decision_spaces.size()); }
};

template <class Decision>
struct IterationReport {
  bool converged = false;
  bool cycle_detected = false;
  int sweeps = 0;
  std::vector<Decision> final_profile;
  std::vector<std::vector<Decision>> trace;  // post-sweep snapshots when recorded
};

struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Utility-maximizing decision for one player with everyone else fixed. Ties
// keep the player's current decision when it is a maximizer, otherwise the
// smallest maximizer; staying put at an optimum is what lets a full
// best-response sweep detect convergence.
template <class Decision>
Decision best_response(int player, const std::vector<Decision>& profile, const Game<Decision>& game) {
  const auto& options = game.decision_spaces.at(static_cast<std::size_t>(player));
  if (options.empty()) throw std::domain_error("empty decision space");
  const Decision current = profile.at(static_cast<std::size_t>(player));

  std::vector<Decision> candidate = profile;
  Decision best = options.front();
  Money best_value;
  Money current_value;
  bool first = true;
  for (const Decision& d : options) {
    candidate[static_cast<std::size_t>(player)] = d;
    const Money value = game.utility(player, candidate);
    if (first || value > best_value) {
      best = d;
      best_value = value;
      first = false;
    }
    if (d == current) current_value = value;
  }
  return current_value == best_value ? current : best;
}

// Exhaustive unilateral-deviation check.
template <class Decision>
bool is_nash(const std::vector<Decision>& profile, const Game<Decision>& game) {
  std::vector<Decision> candidate = profile;
  for (int p = 0; p < game.players(); ++p) {
    const Money held = game.utility(p, profile);
    for (const Decision& d : game.decision_spaces[static_cast<std::size_t>(p)]) {
      candidate[static_cast<std::size_t>(p)] = d;
      if (game.utility(p, candidate) > held) return false;
    }
    candidate[static_cast<std::size_t>(p)] = profile[static_cast<std::size_t>(p)];
  }
  return true;
}

// Sequential best-response sweeps (players in ascending order, updates applied
// in place) until a full sweep changes nothing. A sweep that revisits an
// earlier profile can only repeat forever, so it is reported as a cycle; the
// sweep cap covers everything else. Convergence implies the final profile is
// a pure Nash equilibrium.
template <class Decision>
IterationReport<Decision> best_response_iteration(const Game<Decision>& game, std::vector<Decision> initial,
                                                  int max_sweeps = 100, bool record_trace = false) {
  if (max_sweeps < 1) throw std::domain_error("max_sweeps must be at least 1");
  IterationReport<Decision> report;
  std::set<std::vector<Decision>> seen;
  seen.insert(initial);

  std::vector<Decision> profile = std::move(initial);
  while (report.sweeps < max_sweeps) {
    bool changed = false;
    for (int p = 0; p < game.players(); ++p) {
      Decision next = best_response(p, profile, game);
      if (!(next == profile[static_cast<std::size_t>(p)])) {
        profile[static_cast<std::size_t>(p)] = next;
        changed = true;
      }
    }
    ++report.sweeps;
    if (record_trace) report.trace.push_back(profile);
    if (!changed) {
      report.converged = true;
      break;
    }
    if (!seen.insert(profile).second) {
      report.cycle_detected = true;
      break;
    }
  }
  report.final_profile = std::move(profile);
  return report;
}

// Number of joint profiles, saturating at cap+1 to keep the comparison cheap.
template <class Decision>
std::uint64_t profile_count(const Game<Decision>& game, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (const auto& space : game.decision_spaces) {
    if (space.empty()) throw std::domain_error("empty decision space");
    count *= static_cast<std::uint64_t>(space.size());
    if (count > cap) return cap + 1;
  }
  return count;
}

// Visits every joint profile in lexicographic order (first player most
// significant).
template <class Decision, class Fn>
void for_each_profile(const Game<Decision>& game, Fn&& fn) {
  const int players = game.players();
  std::vector<std::size_t> index(static_cast<std::size_t>(players), 0);
  std::vector<Decision> profile;
  profile.reserve(static_cast<std::size_t>(players));
  for (const auto& space : game.decision_spaces) profile.push_back(space.front());

  while (true) {
    fn(profile);
    int p = players - 1;
    while (p >= 0) {
      auto& space = game.decision_spaces[static_cast<std::size_t>(p)];
      if (++index[static_cast<std::size_t>(p)] < space.size()) {
        profile[static_cast<std::size_t>(p)] = space[index[static_cast<std::size_t>(p)]];
        break;
      }
      index[static_cast<std::size_t>(p)] = 0;
      profile[static_cast<std::size_t>(p)] = space.front();
      --p;
    }
    if (p < 0) break;
  }
}

// Brute-force oracle: all pure Nash equilibria, lexicographic order. Refuses
// instances above the profile cap.
template <class Decision>
std::vector<std::vector<Decision>> enumerate_equilibria(const Game<Decision>& game,
                                                        std::uint64_t cap = 1'000'000) {
  if (profile_count(game, cap) > cap) {
    throw EnumerationCapExceeded("profile space exceeds enumeration cap");
  }
  std::vector<std::vector<Decision>> equilibria;
  for_each_profile(game, [&](const std::vector<Decision>& profile) {
    if (is_nash(profile, game)) equilibria.push_back(profile);
  });
  return equilibria;
}

}  // namespace platoon
