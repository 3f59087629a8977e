#pragma once

#include <utility>

#include "platoon/distribution.hpp"
#include "platoon/equilibrium.hpp"
#include "platoon/scenario.hpp"

namespace platoon {

using TimeGame = Game<int>;

// Departure-time games over the vehicles' feasible-departure sets. The
// returned game holds references to the scenario (and scores), which must
// outlive it.
TimeGame make_even_out_game(const Scenario& scenario);
TimeGame make_score_game(const Scenario& scenario, const ScoreState& scores);
TimeGame make_cooperative_game(const Scenario& scenario);

DepartureProfile default_profile(const Scenario& scenario);

// Exhaustive maximizer of the shared cooperative utility; ties resolve to the
// lexicographically smallest profile. Throws EnumerationCapExceeded above cap.
std::pair<DepartureProfile, Money> social_optimum(const Scenario& scenario, std::uint64_t cap = 1'000'000);

}  // namespace platoon
