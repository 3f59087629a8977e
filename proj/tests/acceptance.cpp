// Acceptance gate: one line per criterion, exit code = number of failures.
// An optional argument restricts the run to that criterion number.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "platoon/cli.hpp"
#include "platoon/config.hpp"
#include "platoon/equilibrium.hpp"
#include "platoon/experiment.hpp"
#include "platoon/games.hpp"
#include "platoon/json_io.hpp"
#include "platoon/market.hpp"
#include "platoon/rng.hpp"

using namespace platoon;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;  // measured numbers, shown for PASS and FAIL alike
};

constexpr std::uint64_t kBaseSeed = 1;

Scenario nth_scenario(std::string_view tag, int index, int n) {
  FleetConfig fleet;
  fleet.n = n;
  return generate_scenario(fleet, EconomicsConfig{},
                           derive_seed(kBaseSeed, tag, static_cast<std::uint64_t>(index), 0));
}

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.3f", value);
  return buffer;
}

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

// Standard error of the mean of paired differences a-b.
double paired_se(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  const double mean = mean_of(d);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const auto n = static_cast<double>(d.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

// --- criterion 1: converged profiles are Nash, market results are rational --

Outcome equilibrium_soundness() {
  int violations = 0;
  std::string first;
  auto flag = [&](int index, const std::string& what) {
    ++violations;
    if (first.empty()) first = "scenario " + std::to_string(index) + ": " + what;
  };

  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    Scenario scenario = nth_scenario("acceptance:c1", i, n);
    ScoreState scores = ScoreState::uniform_random(
        n, derive_seed(kBaseSeed, "acceptance:c1-scores", static_cast<std::uint64_t>(i), 0));
    const std::vector<int> start = default_profile(scenario).departures;

    const TimeGame games[] = {make_even_out_game(scenario), make_score_game(scenario, scores),
                              make_cooperative_game(scenario)};
    const char* names[] = {"even_out", "score", "cooperative"};
    for (int g = 0; g < 3; ++g) {
      auto report = best_response_iteration(games[g], start);
      if (report.converged && !is_nash(report.final_profile, games[g])) {
        flag(i, std::string(names[g]) + " converged to a non-equilibrium");
      }
    }

    MarketOutcome outcome = market_outcome(scenario);
    const MarketState& market = outcome.assignment.market;
    if (outcome.assignment.converged) {
      std::vector<Money> prices;
      for (int s : market.sellers) prices.push_back(market.prices.at(s));
      if (!is_nash(prices, make_market_game(market, scenario))) {
        flag(i, "market prices admit a profitable seller deviation");
      }
    }
    for (int b : market.buyers) {
      const Vehicle& v = scenario.vehicle(b);
      const BuyerChoice choice = buyer_choice(b, market, scenario);
      Money chosen = choice.seller
                         ? v.profit_follower - market.prices.at(*choice.seller) -
                               time_penalty(v, choice.departure)
                         : Money(0);
      if (chosen < Money(0)) flag(i, "buyer accepts a losing offer");
      for (int s : market.sellers) {
        int t = scenario.vehicle(s).default_departure;
        if (t < v.default_departure || t > v.default_departure + v.max_delay) continue;
        if (v.profit_follower - market.prices.at(s) - time_penalty(v, t) > chosen) {
          flag(i, "buyer passes up a strictly better seller");
        }
      }
    }
  }
  return {violations == 0,
          violations == 0 ? "200 scenarios, N=2..10, zero violations" : first};
}

// --- criterion 2: iteration limit points appear in the brute-force census ---

Outcome oracle_equivalence() {
  int violations = 0;
  double worst_gap = 0.0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    Scenario scenario = nth_scenario("acceptance:c2", i, n);
    ScoreState scores = ScoreState::uniform_random(
        n, derive_seed(kBaseSeed, "acceptance:c2-scores", static_cast<std::uint64_t>(i), 0));
    const std::vector<int> start = default_profile(scenario).departures;

    const TimeGame games[] = {make_even_out_game(scenario), make_score_game(scenario, scores),
                              make_cooperative_game(scenario)};
    const char* names[] = {"even_out", "score", "cooperative"};
    for (int g = 0; g < 3; ++g) {
      auto report = best_response_iteration(games[g], start);
      if (!report.converged) continue;
      auto all = enumerate_equilibria(games[g]);
      if (std::find(all.begin(), all.end(), report.final_profile) == all.end()) {
        ++violations;
        if (first.empty()) {
          first = "scenario " + std::to_string(i) + ": " + names[g] + " limit not in census";
        }
      }
      if (g == 2) {
        const Money at_limit = utility_cooperative(report.final_profile, scenario);
        const Money opt_value = social_optimum(scenario).second;
        if (at_limit > opt_value) {
          ++violations;
          if (first.empty()) first = "scenario " + std::to_string(i) + ": limit beats the optimum";
        } else if (opt_value > Money(0)) {
          worst_gap = std::max(worst_gap, ((opt_value - at_limit) / opt_value).to_double());
        }
      }
    }
  }
  return {violations == 0,
          violations == 0
              ? "100 instances, N<=4, zero membership failures; worst relative optimality gap " +
                    fmt(worst_gap)
              : first};
}

// --- criterion 3: exact formula identities over random draws ------------------

Outcome formula_identities() {
  Rng rng(derive_seed(kBaseSeed, "acceptance:c3", 0, 0));
  auto money = [&rng] { return Money(rng.uniform_int(-400, 400), rng.uniform_int(1, 12)); };
  int violations = 0;

  auto one_vehicle_fleet = [](Money std_l, Money std_f, Money own_l, Money own_f) {
    Vehicle v;
    v.id = 1;
    v.default_departure = 0;
    v.max_delay = 10;
    v.profit_leader = own_l;
    v.profit_follower = own_f;
    v.penalty_rate = 10;
    v.score_valuation = Rational(105, 4);
    return Scenario({v}, std_l, std_f);
  };

  for (int i = 0; i < 1000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 12));

    // (a) equal transaction profits when own profits match the standards
    Money std_l = money(), std_f = money();
    Scenario at_standard = one_vehicle_fleet(std_l, std_f, std_l, std_f);
    if (transaction_profit_leader(at_standard.vehicle(1), n, at_standard) !=
        transaction_profit_follower(at_standard.vehicle(1), n, at_standard)) {
      ++violations;
    }

    // (c) the expected share telescopes to (1/n)R_l + ((n-1)/n)R_f
    Money own_l = money(), own_f = money();
    Scenario general = one_vehicle_fleet(std_l, std_f, own_l, own_f);
    Money share(1, n);
    Money expected = share * transaction_profit_leader(general.vehicle(1), n, general) +
                     (Money(1) - share) * transaction_profit_follower(general.vehicle(1), n, general);
    if (expected != share * own_l + (Money(1) - share) * own_f) ++violations;
  }

  // (b) even-out utility never sees the standard profits
  for (int i = 0; i < 1000; ++i) {
    Money own_l = money(), own_f = money();
    std::vector<Vehicle> a_vehicles, b_vehicles;
    for (int id = 1; id <= 2; ++id) {
      Vehicle v;
      v.id = id;
      v.default_departure = id - 1;
      v.max_delay = 10;
      v.profit_leader = own_l;
      v.profit_follower = own_f;
      v.penalty_rate = 10;
      v.score_valuation = Rational(105, 4);
      a_vehicles.push_back(v);
      b_vehicles.push_back(v);
    }
    Scenario a(std::move(a_vehicles), money(), money());
    Scenario b(std::move(b_vehicles), money(), money());
    DepartureProfile together{{1, 1}};
    if (utility_even_out(1, together, a) != utility_even_out(1, together, b)) ++violations;
    if (utility_even_out(2, together, a) != utility_even_out(2, together, b)) ++violations;
  }

  // (d) score updates cancel within every platoon
  for (int i = 0; i < 1000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 10));
    Scenario scenario = nth_scenario("acceptance:c3d", i, n);
    ScoreState scores = ScoreState::uniform_random(n, rng.next());
    DepartureProfile profile;
    for (int id = 1; id <= n; ++id) {
      auto options = feasible_departures(id, scenario);
      profile.departures.push_back(
          options[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(options.size()) - 1))]);
    }
    ScoreState after = apply_score_updates(profile, scores, scenario);
    for (const auto& [time, members] : departure_groups(profile)) {
      Rational delta_sum;
      for (int id : members) delta_sum += after.of(id) - scores.of(id);
      if (members.size() >= 2 && delta_sum != Rational(0)) ++violations;
      if (members.size() == 1 && after.of(members.front()) != scores.of(members.front())) {
        ++violations;
      }
    }
  }

  return {violations == 0, violations == 0 ? "4 identities x 1000 draws, exact"
                                           : std::to_string(violations) + " identity violations"};
}

// --- criteria 4 and 5: ordering of the model curves at N = 20 ----------------

struct CellSamples {
  std::vector<double> utility;
  std::vector<double> follower_pct;
  double utility_mean = 0.0;
  double follower_mean = 0.0;
};

CellSamples samples_at_20(Model model) {
  SweepConfig config;  // defaults: base seed 1, 50 runs, standard economics
  config.n_min = config.n_max = 20;
  CellSamples samples;
  for (const RunRecord& record : run_cell(config, model, 20)) {
    samples.utility.push_back(record.metrics.average_utility.to_double());
    samples.follower_pct.push_back(record.metrics.follower_pct.to_double());
  }
  samples.utility_mean = mean_of(samples.utility);
  samples.follower_mean = mean_of(samples.follower_pct);
  return samples;
}

Outcome utility_ordering() {
  const Model chain[] = {Model::kCooperative, Model::kEvenOut, Model::kScore, Model::kMarket,
                         Model::kSpontaneous};
  CellSamples cells[5];
  for (int k = 0; k < 5; ++k) cells[k] = samples_at_20(chain[k]);

  bool ok = true;
  std::string detail = "means:";
  for (int k = 0; k < 5; ++k) {
    detail += (k ? ", " : " ") + to_string(chain[k]) + " " + fmt(cells[k].utility_mean);
  }

  // Each adjacent link, with one paired standard error of slack.
  for (int k = 0; k + 1 < 5; ++k) {
    const double diff = cells[k].utility_mean - cells[k + 1].utility_mean;
    const double se = paired_se(cells[k].utility, cells[k + 1].utility);
    if (diff < -se) {
      ok = false;
      detail += "; " + to_string(chain[k]) + " < " + to_string(chain[k + 1]) + " (paired diff " +
                fmt(diff) + ", SE " + fmt(se) + ")";
    }
  }

  // Spontaneous strictly lowest, by at least two paired standard errors.
  for (int k = 0; k < 4; ++k) {
    const double diff = cells[k].utility_mean - cells[4].utility_mean;
    const double se = paired_se(cells[k].utility, cells[4].utility);
    if (diff < 2.0 * se) {
      ok = false;
      detail += "; spontaneous not clearly below " + to_string(chain[k]);
    }
  }
  return {ok, detail};
}

Outcome follower_ordering() {
  CellSamples score = samples_at_20(Model::kScore);
  CellSamples cooperative = samples_at_20(Model::kCooperative);
  CellSamples even_out = samples_at_20(Model::kEvenOut);

  bool ok = true;
  std::string detail = "follower%: score " + fmt(score.follower_mean) + ", cooperative " +
                       fmt(cooperative.follower_mean) + ", even_out " + fmt(even_out.follower_mean);
  for (const auto& [other, name] :
       {std::pair{&cooperative, "cooperative"}, std::pair{&even_out, "even_out"}}) {
    const double diff = score.follower_mean - other->follower_mean;
    const double se = paired_se(score.follower_pct, other->follower_pct);
    if (diff < -se) {
      ok = false;
      detail += std::string("; score < ") + name + " (paired diff " + fmt(diff) + ", SE " +
                fmt(se) + ")";
    }
  }
  return {ok, detail};
}

// --- criterion 6: shared-utility sweeps never cycle ---------------------------

Outcome cooperative_convergence() {
  int cycles = 0;
  int nonconverged = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    Scenario scenario = nth_scenario("acceptance:c1", i, n);
    auto report = best_response_iteration(make_cooperative_game(scenario),
                                          default_profile(scenario).departures);
    cycles += report.cycle_detected ? 1 : 0;
    nonconverged += report.converged ? 0 : 1;
  }
  return {cycles == 0 && nonconverged == 0,
          "200 scenarios: " + std::to_string(cycles) + " cycles, " +
              std::to_string(nonconverged) + " non-converged"};
}

// --- criterion 7: market structural postconditions ----------------------------

Outcome market_structure() {
  int violations = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    Scenario scenario = nth_scenario("acceptance:c1", i, n);
    MarketOutcome outcome = market_outcome(scenario);
    const MarketState& market = outcome.assignment.market;
    auto flag = [&](const std::string& what) {
      ++violations;
      if (first.empty()) first = "scenario " + std::to_string(i) + ": " + what;
    };

    for (int s : market.sellers) {
      if (followers(s, market, scenario).empty()) flag("seller without followers");
      if (outcome.profile.at(s) != scenario.vehicle(s).default_departure) {
        flag("seller left its default departure");
      }
    }
    if (outcome.assignment.demotions > n) flag("more demotions than vehicles");
  }
  return {violations == 0,
          violations == 0 ? "200 scenarios, all postconditions hold" : first};
}

// --- criterion 8: sweep reruns are byte-identical ------------------------------

Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "platoon-acceptance-c8";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config_path = root / "config.json";
  write_text_file(config_path.string(),
                  "{\"seed\": 11, \"sweep\": {\"n_min\": 1, \"n_max\": 4, \"runs\": 3}}\n");

  auto sweep_into = [&](const fs::path& out) {
    const std::string config = config_path.string();
    const std::string out_dir = out.string();
    const char* argv[] = {"platoon-match", "sweep", "--config", config.c_str(),
                          "--out", out_dir.c_str()};
    std::ostringstream captured;  // keep the CLI's progress line off our report
    auto* previous = std::cout.rdbuf(captured.rdbuf());
    const int code = cli_main(6, argv);
    std::cout.rdbuf(previous);
    return code;
  };
  const int first = sweep_into(root / "a");
  const int second = sweep_into(root / "b");
  if (first != 0 || second != 0) return {false, "sweep exited nonzero"};

  auto read = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  };
  for (const char* name : {"sweep.csv", "sweep_converged_only.csv"}) {
    if (read(root / "a" / name) != read(root / "b" / name)) {
      return {false, std::string(name) + " differs between reruns"};
    }
  }
  return {true, "two sweep invocations, byte-identical CSVs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  if (argc > 1) only = std::atoi(argv[1]);

  struct Criterion {
    int number;
    const char* label;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "equilibrium soundness", equilibrium_soundness},
      {2, "oracle equivalence", oracle_equivalence},
      {3, "formula identities", formula_identities},
      {4, "utility ordering at N=20", utility_ordering},
      {5, "follower ordering at N=20", follower_ordering},
      {6, "cooperative convergence", cooperative_convergence},
      {7, "market structure", market_structure},
      {8, "sweep reproducibility", reproducibility},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (only && *only != criterion.number) continue;
    const Outcome outcome = criterion.run();
    std::cout << "criterion " << criterion.number << " (" << criterion.label
              << "): " << (outcome.ok ? "PASS" : "FAIL");
    if (!outcome.detail.empty()) std::cout << " — " << outcome.detail;
    std::cout << "\n";
    if (!outcome.ok) ++failures;
  }
  return failures;
}
