#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/distribution.hpp"
#include "platoon/equilibrium.hpp"
#include "platoon/games.hpp"
#include "platoon/market.hpp"
#include "platoon/rational.hpp"
#include "platoon/scenario.hpp"

namespace platoon {

// The five ways a run can decide departures and split platooning profits.
enum class Model {
  kEvenOut,
  kScore,
  kMarket,
  kCooperative,
  kSpontaneous,
};

// Stable tags used in CSV rows, JSON artifacts, and CLI flags.
std::string to_string(Model model);
std::optional<Model> parse_model(std::string_view tag);
const std::vector<Model>& all_models();

struct ConvergenceRecord {
  bool converged = true;
  bool cycle_detected = false;
  int sweeps = 0;
};

struct RunMetrics {
  Model model = Model::kSpontaneous;
  int n = 0;
  std::uint64_t scenario_seed = 0;
  std::uint64_t model_seed = 0;
  Money average_utility;   // (sum of per-vehicle utilities) / n, exact
  Rational follower_pct;   // 100 * followers / n, in [0, 100]
  int followers = 0;
  int leaders = 0;
  int solos = 0;
  int platoons = 0;        // groups of size >= 2 (sellers with buyers, for market)
  ConvergenceRecord convergence;
};

// Full per-run artifact: metrics plus everything needed to audit the run.
struct RunRecord {
  RunMetrics metrics;
  DepartureProfile profile;
  std::vector<Money> utilities;        // by vehicle id, index id-1
  LeaderAssignment leaders;            // per departure time, platoons only
  std::optional<ScoreState> scores_initial;
  std::optional<ScoreState> scores_after;
  std::optional<MarketAssignment> market;
  std::vector<std::vector<int>> trace;  // post-sweep profiles when recorded
};

struct RunOptions {
  int max_sweeps = 100;
  // Fractions of the standard follower profit admitted as seller prices.
  std::vector<Rational> price_grid_fractions = EconomicsConfig{}.price_grid_fractions;
  // Explicit score-system scores; empty draws them from the model seed.
  std::vector<Rational> scores;
  bool record_trace = false;
};

RunRecord run_once(Model model, const Scenario& scenario, std::uint64_t model_seed,
                   const RunOptions& options = {});

struct SweepConfig {
  int n_min = 1;
  int n_max = 29;
  int runs = 50;
  std::uint64_t base_seed = 1;
  FleetConfig fleet;        // fleet.n is replaced by the cell's N
  EconomicsConfig economics;
  std::vector<Model> models = all_models();
  int max_sweeps = 100;

  void validate() const;    // throws std::domain_error on bad ranges
};

// Scenario seeds depend only on (base seed, N, run) so the same random fleets
// are replayed for every model: cross-model comparisons are paired.
std::uint64_t scenario_seed_for(const SweepConfig& config, int n, int run);
std::uint64_t model_seed_for(const SweepConfig& config, Model model, int n, int run);

struct CellStats {
  Model model = Model::kSpontaneous;
  int n = 0;
  int runs = 0;             // runs aggregated into this row
  Money mean_utility;
  double se_utility = 0.0;
  Rational mean_follower_pct;
  double se_follower_pct = 0.0;
  int nonconvergence_count = 0;
};

std::vector<RunRecord> run_cell(const SweepConfig& config, Model model, int n);
CellStats aggregate_cell(Model model, int n, const std::vector<RunRecord>& records,
                         bool converged_only);

struct SweepResult {
  std::vector<CellStats> cells;            // all runs, non-converged flagged
  std::vector<CellStats> converged_cells;  // same grid, non-converged runs dropped
  std::vector<RunRecord> records;          // populated only when keep_records
};

SweepResult monte_carlo_sweep(const SweepConfig& config, bool keep_records = false);

// One row per cell: model,N,mean_utility,se_utility,mean_follower_pct,
// se_follower_pct,nonconvergence_count.  Exact quantities are printed with six
// decimal digits so reruns are byte-identical.
std::string sweep_csv(const std::vector<CellStats>& cells);

}  // namespace platoon
