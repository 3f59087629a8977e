#include "platoon/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "platoon/rng.hpp"

namespace platoon {
namespace {

struct GroupCounts {
  int followers = 0;
  int leaders = 0;
  int solos = 0;
  int platoons = 0;
};

// Follower counting by co-departure: a platoon of size n has one leader and
// n-1 followers no matter who ends up leading.
GroupCounts count_groups(const DepartureProfile& profile) {
  GroupCounts counts;
  for (const auto& [time, members] : departure_groups(profile)) {
    if (members.size() == 1) {
      ++counts.solos;
    } else {
      ++counts.platoons;
      ++counts.leaders;
      counts.followers += static_cast<int>(members.size()) - 1;
    }
  }
  return counts;
}

void fill_metrics(RunRecord& record, const Scenario& scenario, const GroupCounts& counts) {
  const int n = scenario.size();
  Money total;
  for (const Money& u : record.utilities) total = total + u;
  record.metrics.n = n;
  record.metrics.average_utility = total / Money(n);
  record.metrics.follower_pct = Rational(100) * Rational(counts.followers) / Rational(n);
  record.metrics.followers = counts.followers;
  record.metrics.leaders = counts.leaders;
  record.metrics.solos = counts.solos;
  record.metrics.platoons = counts.platoons;
}

void solve_time_game(RunRecord& record, const TimeGame& game, const Scenario& scenario,
                     const RunOptions& options) {
  auto report = best_response_iteration(game, default_profile(scenario).departures,
                                        options.max_sweeps, options.record_trace);
  record.profile.departures = report.final_profile;
  record.trace = std::move(report.trace);
  record.metrics.convergence.converged = report.converged;
  record.metrics.convergence.cycle_detected = report.cycle_detected;
  record.metrics.convergence.sweeps = report.sweeps;
}

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

// Standard error of the mean (sample standard deviation over sqrt(n)); zero
// for fewer than two observations.
double standard_error(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mean = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

std::string format_fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

}  // namespace

std::string to_string(Model model) {
  switch (model) {
    case Model::kEvenOut: return "even_out";
    case Model::kScore: return "score";
    case Model::kMarket: return "market";
    case Model::kCooperative: return "cooperative";
    case Model::kSpontaneous: return "spontaneous";
  }
  throw std::domain_error("unknown model");
}

std::optional<Model> parse_model(std::string_view tag) {
  for (Model model : all_models()) {
    if (tag == to_string(model)) return model;
  }
  return std::nullopt;
}

const std::vector<Model>& all_models() {
  static const std::vector<Model> models{Model::kEvenOut, Model::kScore, Model::kMarket,
                                         Model::kCooperative, Model::kSpontaneous};
  return models;
}

RunRecord run_once(Model model, const Scenario& scenario, std::uint64_t model_seed,
                   const RunOptions& options) {
  RunRecord record;
  record.metrics.model = model;
  record.metrics.model_seed = model_seed;
  const int n = scenario.size();

  switch (model) {
    case Model::kSpontaneous: {
      auto outcome = spontaneous_outcome(scenario);
      record.profile = std::move(outcome.profile);
      record.utilities = std::move(outcome.utilities);
      record.leaders = draw_leaders(record.profile, model_seed);
      break;
    }
    case Model::kEvenOut: {
      solve_time_game(record, make_even_out_game(scenario), scenario, options);
      record.utilities.reserve(static_cast<std::size_t>(n));
      for (int id = 1; id <= n; ++id) {
        record.utilities.push_back(utility_even_out(id, record.profile, scenario));
      }
      record.leaders = draw_leaders(record.profile, model_seed);
      break;
    }
    case Model::kScore: {
      ScoreState scores = options.scores.empty() ? ScoreState::uniform_random(n, model_seed)
                                                 : ScoreState(options.scores);
      record.scores_initial = scores;
      solve_time_game(record, make_score_game(scenario, scores), scenario, options);
      record.utilities.reserve(static_cast<std::size_t>(n));
      for (int id = 1; id <= n; ++id) {
        record.utilities.push_back(utility_score(id, record.profile, scores, scenario));
      }
      record.leaders = score_leaders(record.profile, scores);
      record.scores_after = apply_score_updates(record.profile, scores, scenario);
      break;
    }
    case Model::kCooperative: {
      solve_time_game(record, make_cooperative_game(scenario), scenario, options);
      record.utilities = cooperative_contributions(record.profile, scenario);
      record.leaders = cooperative_leaders(record.profile, scenario);
      break;
    }
    case Model::kMarket: {
      MarketOptions market_options;
      market_options.price_grid = price_grid_for(scenario, options.price_grid_fractions);
      market_options.max_sweeps = options.max_sweeps;
      MarketOutcome outcome = market_outcome(scenario, market_options);
      record.profile = std::move(outcome.profile);
      record.utilities = std::move(outcome.utilities);
      record.leaders = std::move(outcome.leaders);
      record.metrics.convergence.converged = outcome.assignment.converged;
      record.metrics.convergence.cycle_detected = outcome.assignment.cycle_detected;
      record.metrics.convergence.sweeps = outcome.assignment.price_sweeps;
      record.market = std::move(outcome.assignment);
      break;
    }
  }

  if (model == Model::kMarket) {
    // Platoons form around sellers, not co-departure: co-timed lone buyers do
    // not share profits, so they count as solo.
    GroupCounts counts;
    const MarketState& market = record.market->market;
    for (int id : market.sellers) {
      if (!followers(id, market, scenario).empty()) {
        ++counts.leaders;
        ++counts.platoons;
      } else {
        ++counts.solos;
      }
    }
    for (int id : market.buyers) {
      if (buyer_choice(id, market, scenario).seller) {
        ++counts.followers;
      } else {
        ++counts.solos;
      }
    }
    fill_metrics(record, scenario, counts);
  } else {
    fill_metrics(record, scenario, count_groups(record.profile));
  }
  return record;
}

void SweepConfig::validate() const {
  if (n_min < 1 || n_max < n_min) throw std::domain_error("fleet-size range is empty");
  if (runs < 1) throw std::domain_error("runs must be at least 1");
  if (max_sweeps < 1) throw std::domain_error("max_sweeps must be at least 1");
  if (models.empty()) throw std::domain_error("model list is empty");
  if (fleet.window_start > fleet.window_end) throw std::domain_error("departure window is empty");
  if (fleet.max_delay < 0) throw std::domain_error("max delay must be nonnegative");
}

std::uint64_t scenario_seed_for(const SweepConfig& config, int n, int run) {
  return derive_seed(config.base_seed, "scenario", static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(run));
}

std::uint64_t model_seed_for(const SweepConfig& config, Model model, int n, int run) {
  return derive_seed(config.base_seed, "model:" + to_string(model), static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(run));
}

std::vector<RunRecord> run_cell(const SweepConfig& config, Model model, int n) {
  config.validate();
  RunOptions options;
  options.max_sweeps = config.max_sweeps;
  options.price_grid_fractions = config.economics.price_grid_fractions;

  FleetConfig fleet = config.fleet;
  fleet.n = n;

  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(config.runs));
  for (int run = 0; run < config.runs; ++run) {
    const std::uint64_t scenario_seed = scenario_seed_for(config, n, run);
    const std::uint64_t model_seed = model_seed_for(config, model, n, run);
    const Scenario scenario = generate_scenario(fleet, config.economics, scenario_seed);
    RunRecord record = run_once(model, scenario, model_seed, options);
    record.metrics.scenario_seed = scenario_seed;
    records.push_back(std::move(record));
  }
  return records;
}

CellStats aggregate_cell(Model model, int n, const std::vector<RunRecord>& records,
                         bool converged_only) {
  CellStats stats;
  stats.model = model;
  stats.n = n;

  Money utility_total;
  Rational follower_total;
  std::vector<double> utilities;
  std::vector<double> follower_pcts;
  for (const RunRecord& record : records) {
    if (!record.metrics.convergence.converged) ++stats.nonconvergence_count;
    if (converged_only && !record.metrics.convergence.converged) continue;
    ++stats.runs;
    utility_total = utility_total + record.metrics.average_utility;
    follower_total = follower_total + record.metrics.follower_pct;
    utilities.push_back(record.metrics.average_utility.to_double());
    follower_pcts.push_back(record.metrics.follower_pct.to_double());
  }
  if (stats.runs > 0) {
    stats.mean_utility = utility_total / Money(stats.runs);
    stats.mean_follower_pct = follower_total / Rational(stats.runs);
    stats.se_utility = standard_error(utilities);
    stats.se_follower_pct = standard_error(follower_pcts);
  }
  return stats;
}

SweepResult monte_carlo_sweep(const SweepConfig& config, bool keep_records) {
  config.validate();
  SweepResult result;
  for (Model model : config.models) {
    for (int n = config.n_min; n <= config.n_max; ++n) {
      std::vector<RunRecord> records = run_cell(config, model, n);
      result.cells.push_back(aggregate_cell(model, n, records, /*converged_only=*/false));
      result.converged_cells.push_back(aggregate_cell(model, n, records, /*converged_only=*/true));
      if (keep_records) {
        for (RunRecord& record : records) result.records.push_back(std::move(record));
      }
    }
  }
  return result;
}

std::string sweep_csv(const std::vector<CellStats>& cells) {
  std::string out = "model,N,mean_utility,se_utility,mean_follower_pct,se_follower_pct,nonconvergence_count\n";
  for (const CellStats& cell : cells) {
    out += to_string(cell.model);
    out += ',';
    out += std::to_string(cell.n);
    out += ',';
    if (cell.runs > 0) {
      out += cell.mean_utility.to_decimal(6);
      out += ',';
      out += format_fixed6(cell.se_utility);
      out += ',';
      out += cell.mean_follower_pct.to_decimal(6);
      out += ',';
      out += format_fixed6(cell.se_follower_pct);
    } else {
      out += ",,,";  // every run excluded: no aggregate to report
    }
    out += ',';
    out += std::to_string(cell.nonconvergence_count);
    out += '\n';
  }
  return out;
}

}  // namespace platoon
