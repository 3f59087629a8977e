#pragma once

#include <map>
#include <optional>
#include <vector>

#include "platoon/distribution.hpp"
#include "platoon/equilibrium.hpp"
#include "platoon/scenario.hpp"

namespace platoon {

// Sellers post a follower price and always depart at their (pairwise
// distinct) default times; buyers myopically pick the most profitable seller
// within their delay window, or depart alone for zero.
struct MarketState {
  std::vector<int> sellers;  // ascending ids
  std::vector<int> buyers;   // ascending ids
  std::map<int, Money> prices;
  std::map<int, std::vector<Money>> price_grids;  // ascending per seller
};

// Partition, grid membership and seller default-time uniqueness; throws
// std::domain_error on violation.
void validate_market(const MarketState& market, const Scenario& scenario);

struct BuyerChoice {
  int departure = 0;
  std::optional<int> seller;  // nullopt: departs alone at its own default
};

// Departure times a buyer can pick: reachable seller defaults plus its own.
std::vector<int> buyer_options(int buyer, const MarketState& market, const Scenario& scenario);

// Most profitable option at the current prices. Ties prefer departing alone,
// then the earliest seller time.
BuyerChoice buyer_choice(int buyer, const MarketState& market, const Scenario& scenario);
int buyer_best_departure(int buyer, const MarketState& market, const Scenario& scenario);

// Buyers whose best choice is to follow the given seller.
std::vector<int> followers(int seller, const MarketState& market, const Scenario& scenario);

// Leader profit plus collected payments; zero without followers.
Money seller_utility(int seller, const MarketState& market, const Scenario& scenario);

// Grid price maximizing the seller's utility at the others' current prices.
// Keeps the current price when it attains the maximum; otherwise moves to
// the lowest maximizing price (the same tie semantics as the departure-time
// games, without which indifferent sellers oscillate).
Money seller_best_response(int seller, const MarketState& market, const Scenario& scenario);

// Shared price grid from the fleet's standard follower profit.
std::vector<Money> default_price_grid(const Scenario& scenario);
std::vector<Money> price_grid_for(const Scenario& scenario, const std::vector<Rational>& fractions);

struct MarketOptions {
  std::vector<Money> price_grid;      // empty: default_price_grid(scenario)
  std::vector<Money> initial_prices;  // aligned with the initial sellers; empty: lowest grid price
  int max_sweeps = 100;
};

struct MarketAssignment {
  MarketState market;  // final sellers, buyers and equilibrium prices
  int demotions = 0;
  int price_sweeps = 0;
  // The final pricing loop reached a fixed point, so the returned prices are
  // a pure Nash equilibrium of the final sellers' game. Discrete price
  // competition admits genuine best-response cycles (some seller sets have no
  // pure equilibrium at all); those runs end at the cycle-break prices with
  // converged=false.
  bool converged = true;
  bool cycle_detected = false;  // any pricing loop broke on a repeated price vector
};

// Seller-assignment procedure: start from all vehicles (one seller per
// distinct default time), iterate price best responses to a fixed point, then
// demote one follower-less seller to buyer; repeat until every remaining
// seller keeps at least one follower.
MarketAssignment assign_sellers(const Scenario& scenario, const MarketOptions& options = {});

struct MarketOutcome {
  DepartureProfile profile;
  std::vector<Money> utilities;
  LeaderAssignment leaders;
  MarketAssignment assignment;
};

MarketOutcome market_outcome(const Scenario& scenario, const MarketOptions& options = {});

// The final pricing game (players = assigned sellers, decisions = grid
// prices), for equilibrium checks against the generic machinery.
Game<Money> make_market_game(const MarketState& market, const Scenario& scenario);

}  // namespace platoon
