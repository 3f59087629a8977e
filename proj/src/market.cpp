#include "platoon/market.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace platoon {
namespace {

bool is_seller(const MarketState& market, int id) {
  return std::binary_search(market.sellers.begin(), market.sellers.end(), id);
}

bool is_buyer(const MarketState& market, int id) {
  return std::binary_search(market.buyers.begin(), market.buyers.end(), id);
}

// Sellers sorted by default departure time; unique times are a market
// invariant, so the order is total.
std::vector<int> sellers_by_time(const MarketState& market, const Scenario& scenario) {
  std::vector<int> order = market.sellers;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ta = scenario.vehicle(a).default_departure;
    int tb = scenario.vehicle(b).default_departure;
    return ta != tb ? ta < tb : a < b;
  });
  return order;
}

}  // namespace

void validate_market(const MarketState& market, const Scenario& scenario) {
  std::vector<int> all = market.sellers;
  all.insert(all.end(), market.buyers.begin(), market.buyers.end());
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) != scenario.size()) {
    throw std::domain_error("sellers and buyers must partition the fleet");
  }
  for (int k = 0; k < scenario.size(); ++k) {
    if (all[static_cast<std::size_t>(k)] != k + 1) {
      throw std::domain_error("sellers and buyers must partition the fleet");
    }
  }
  std::set<int> seller_times;
  for (int id : market.sellers) {
    if (!seller_times.insert(scenario.vehicle(id).default_departure).second) {
      throw std::domain_error("seller default departure times must be distinct");
    }
    auto grid_it = market.price_grids.find(id);
    if (grid_it == market.price_grids.end() || grid_it->second.empty()) {
      throw std::domain_error("seller " + std::to_string(id) + " has no price grid");
    }
    auto price_it = market.prices.find(id);
    if (price_it == market.prices.end()) {
      throw std::domain_error("seller " + std::to_string(id) + " has no price");
    }
    const auto& grid = grid_it->second;
    if (std::find(grid.begin(), grid.end(), price_it->second) == grid.end()) {
      throw std::domain_error("seller " + std::to_string(id) + " price is not on its grid");
    }
  }
}

std::vector<int> buyer_options(int buyer, const MarketState& market, const Scenario& scenario) {
  if (!is_buyer(market, buyer)) {
    throw std::domain_error("vehicle " + std::to_string(buyer) + " is not a buyer");
  }
  const Vehicle& b = scenario.vehicle(buyer);
  std::vector<int> options{b.default_departure};
  for (int id : market.sellers) {
    int t = scenario.vehicle(id).default_departure;
    if (t >= b.default_departure && t <= b.default_departure + b.max_delay) {
      options.push_back(t);
    }
  }
  std::sort(options.begin(), options.end());
  options.erase(std::unique(options.begin(), options.end()), options.end());
  return options;
}

BuyerChoice buyer_choice(int buyer, const MarketState& market, const Scenario& scenario) {
  if (!is_buyer(market, buyer)) {
    throw std::domain_error("vehicle " + std::to_string(buyer) + " is not a buyer");
  }
  const Vehicle& b = scenario.vehicle(buyer);
  // Departing alone is worth exactly zero and wins ties; sellers are scanned
  // in time order so equal-profit sellers resolve to the earliest departure.
  BuyerChoice best{b.default_departure, std::nullopt};
  Money best_value;
  for (int id : sellers_by_time(market, scenario)) {
    int t = scenario.vehicle(id).default_departure;
    if (t < b.default_departure || t > b.default_departure + b.max_delay) continue;
    const Money value = b.profit_follower - market.prices.at(id) - time_penalty(b, t);
    if (value > best_value) {
      best = BuyerChoice{t, id};
      best_value = value;
    }
  }
  return best;
}

int buyer_best_departure(int buyer, const MarketState& market, const Scenario& scenario) {
  return buyer_choice(buyer, market, scenario).departure;
}

std::vector<int> followers(int seller, const MarketState& market, const Scenario& scenario) {
  if (!is_seller(market, seller)) {
    throw std::domain_error("vehicle " + std::to_string(seller) + " is not a seller");
  }
  std::vector<int> result;
  for (int j : market.buyers) {
    if (buyer_choice(j, market, scenario).seller == seller) result.push_back(j);
  }
  return result;
}

Money seller_utility(int seller, const MarketState& market, const Scenario& scenario) {
  const auto f = followers(seller, market, scenario);
  if (f.empty()) return Money(0);
  return scenario.vehicle(seller).profit_leader +
         Money(static_cast<std::int64_t>(f.size())) * market.prices.at(seller);
}

Money seller_best_response(int seller, const MarketState& market, const Scenario& scenario) {
  if (!is_seller(market, seller)) {
    throw std::domain_error("vehicle " + std::to_string(seller) + " is not a seller");
  }
  const auto grid_it = market.price_grids.find(seller);
  if (grid_it == market.price_grids.end() || grid_it->second.empty()) {
    throw std::domain_error("seller " + std::to_string(seller) + " has an empty price grid");
  }
  // Same tie semantics as the departure-time games: keep the current price
  // when it already attains the maximum (otherwise sellers indifferent
  // between milking captive buyers and undercutting rivals oscillate
  // forever), else move to the lowest maximizing price.
  const Money current = market.prices.at(seller);
  MarketState candidate = market;
  Money best_price;
  Money best_value;
  Money current_value;
  bool first = true;
  bool current_on_grid = false;
  for (const Money& price : grid_it->second) {  // ascending: moves take the lowest
    candidate.prices[seller] = price;
    const Money value = seller_utility(seller, candidate, scenario);
    if (price == current) {
      current_value = value;
      current_on_grid = true;
    }
    if (first || value > best_value) {
      best_price = price;
      best_value = value;
      first = false;
    }
  }
  if (current_on_grid && current_value == best_value) return current;
  return best_price;
}

std::vector<Money> default_price_grid(const Scenario& scenario) {
  EconomicsConfig defaults;
  return price_grid_for(scenario, defaults.price_grid_fractions);
}

std::vector<Money> price_grid_for(const Scenario& scenario, const std::vector<Rational>& fractions) {
  std::vector<Money> grid;
  grid.reserve(fractions.size());
  for (const Rational& f : fractions) grid.push_back(f * scenario.standard_profit_follower());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

MarketAssignment assign_sellers(const Scenario& scenario, const MarketOptions& options) {
  std::vector<Money> grid = options.price_grid.empty() ? default_price_grid(scenario) : options.price_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) throw std::domain_error("price grid is empty");
  if (options.max_sweeps < 1) throw std::domain_error("max_sweeps must be at least 1");

  MarketAssignment result;
  MarketState& market = result.market;

  // Initial partition: every vehicle wants to sell, but seller departure
  // times must be distinct, so the lowest id at each default time sells and
  // the rest start as buyers.
  std::map<int, int> first_at_time;
  for (const Vehicle& v : scenario.vehicles()) {
    auto [it, inserted] = first_at_time.try_emplace(v.default_departure, v.id);
    if (inserted) {
      market.sellers.push_back(v.id);
    } else {
      market.buyers.push_back(v.id);
    }
  }
  std::sort(market.sellers.begin(), market.sellers.end());
  std::sort(market.buyers.begin(), market.buyers.end());

  if (!options.initial_prices.empty() && options.initial_prices.size() != market.sellers.size()) {
    throw std::domain_error("initial_prices must match the initial seller count (" +
                            std::to_string(market.sellers.size()) + ")");
  }
  for (std::size_t k = 0; k < market.sellers.size(); ++k) {
    int id = market.sellers[k];
    market.price_grids[id] = grid;
    market.prices[id] = options.initial_prices.empty() ? grid.front() : options.initial_prices[k];
  }
  validate_market(market, scenario);

  while (true) {
    // Price fixed point at the current seller set. Discrete price competition
    // can cycle; a repeated post-sweep price vector proves it (the sweep map
    // is deterministic), so we stop there and record the cycle.
    std::set<std::vector<Money>> seen;
    auto price_vector = [&] {
      std::vector<Money> p;
      p.reserve(market.sellers.size());
      for (int id : market.sellers) p.push_back(market.prices.at(id));
      return p;
    };
    seen.insert(price_vector());
    bool stable = market.sellers.empty();
    for (int sweep = 0; sweep < options.max_sweeps && !stable; ++sweep) {
      bool changed = false;
      for (int id : market.sellers) {
        Money next = seller_best_response(id, market, scenario);
        if (next != market.prices.at(id)) {
          market.prices[id] = next;
          changed = true;
        }
      }
      ++result.price_sweeps;
      if (!changed) {
        stable = true;
        break;
      }
      if (!seen.insert(price_vector()).second) {
        result.cycle_detected = true;
        break;
      }
    }
    // Convergence is judged on the last pricing loop: when it stabilizes, the
    // returned prices are a fixed point of the final game even if an earlier,
    // larger seller set cycled on the way.
    result.converged = stable;

    // Demote one follower-less seller, lowest id first.
    int demote = 0;
    for (int id : market.sellers) {
      if (followers(id, market, scenario).empty()) {
        demote = id;
        break;
      }
    }
    if (demote == 0) break;
    market.sellers.erase(std::find(market.sellers.begin(), market.sellers.end(), demote));
    market.prices.erase(demote);
    market.price_grids.erase(demote);
    market.buyers.insert(std::upper_bound(market.buyers.begin(), market.buyers.end(), demote), demote);
    ++result.demotions;
  }
  return result;
}

MarketOutcome market_outcome(const Scenario& scenario, const MarketOptions& options) {
  MarketOutcome outcome;
  outcome.assignment = assign_sellers(scenario, options);
  const MarketState& market = outcome.assignment.market;

  outcome.profile.departures.resize(static_cast<std::size_t>(scenario.size()));
  outcome.utilities.resize(static_cast<std::size_t>(scenario.size()));

  for (int id : market.sellers) {
    outcome.profile.departures[static_cast<std::size_t>(id) - 1] =
        scenario.vehicle(id).default_departure;
    outcome.utilities[static_cast<std::size_t>(id) - 1] = seller_utility(id, market, scenario);
    if (!followers(id, market, scenario).empty()) {
      outcome.leaders.leader_by_time[scenario.vehicle(id).default_departure] = id;
    }
  }
  for (int id : market.buyers) {
    const Vehicle& b = scenario.vehicle(id);
    const BuyerChoice choice = buyer_choice(id, market, scenario);
    outcome.profile.departures[static_cast<std::size_t>(id) - 1] = choice.departure;
    if (choice.seller) {
      outcome.utilities[static_cast<std::size_t>(id) - 1] =
          b.profit_follower - market.prices.at(*choice.seller) - time_penalty(b, choice.departure);
    }  // alone: exactly zero
  }
  return outcome;
}

Game<Money> make_market_game(const MarketState& market, const Scenario& scenario) {
  Game<Money> game;
  game.decision_spaces.reserve(market.sellers.size());
  for (int id : market.sellers) game.decision_spaces.push_back(market.price_grids.at(id));
  // Copy the state; the utility rebinds the price vector on every call.
  game.utility = [market, &scenario](int player, const std::vector<Money>& prices) {
    MarketState candidate = market;
    for (std::size_t k = 0; k < candidate.sellers.size(); ++k) {
      candidate.prices[candidate.sellers[k]] = prices[k];
    }
    return seller_utility(candidate.sellers[static_cast<std::size_t>(player)], candidate, scenario);
  };
  return game;
}

}  // namespace platoon
