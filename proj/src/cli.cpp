#include "platoon/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "platoon/config.hpp"
#include "platoon/experiment.hpp"
#include "platoon/json_io.hpp"
#include "platoon/rng.hpp"
#include "platoon/svg_chart.hpp"

namespace platoon {
namespace {

using nlohmann::json;

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool plot = false;
  bool trace = false;
  std::vector<std::string> models;  // sweep: restrict the model list
  std::optional<std::string> n_range;
  std::optional<std::string> check_file;  // oracle: solution to cross-check
};

std::filesystem::path prepare_out_dir(const CliOptions& options) {
  std::filesystem::path dir(options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory \"" + options.out_dir + "\"");
  }
  return dir;
}

AppConfig load_config(const CliOptions& options) {
  AppConfig config = load_app_config(options.config_path);
  if (options.seed) {
    config.seed = *options.seed;
    config.sweep.base_seed = *options.seed;
  }
  return config;
}

Scenario load_or_generate_scenario(const AppConfig& config) {
  if (config.model.scenario_file) {
    return scenario_from_json(load_json_file(*config.model.scenario_file));
  }
  return generate_scenario(config.fleet, config.economics, config.seed);
}

Model required_model(const AppConfig& config) {
  if (!config.model.name) {
    throw ConfigError("model.name: required (one of even_out, score, market, cooperative, spontaneous)");
  }
  return *config.model.name;
}

RunOptions run_options_for(const AppConfig& config, bool record_trace) {
  RunOptions options;
  options.max_sweeps = config.model.max_sweeps;
  options.price_grid_fractions = config.economics.price_grid_fractions;
  options.scores = config.model.scores;
  options.record_trace = record_trace;
  return options;
}

std::uint64_t solve_model_seed(const AppConfig& config, Model model, int n) {
  return derive_seed(config.seed, "model:" + to_string(model), static_cast<std::uint64_t>(n), 0);
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_text_file(path.string(), doc.dump(2) + "\n");
}

int cmd_gen(const CliOptions& options) {
  const AppConfig config = load_config(options);
  const auto out = prepare_out_dir(options);
  const Scenario scenario = generate_scenario(config.fleet, config.economics, config.seed);
  const auto path = out / "scenario.json";
  write_json(path, scenario_to_json(scenario));
  for (const std::string& warning : scenario.warnings()) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << "wrote " << path.string() << " (" << scenario.size() << " vehicles)\n";
  return kExitOk;
}

int cmd_solve(const CliOptions& options) {
  const AppConfig config = load_config(options);
  const auto out = prepare_out_dir(options);
  const Model model = required_model(config);
  const Scenario scenario = load_or_generate_scenario(config);

  RunRecord record = run_once(model, scenario, solve_model_seed(config, model, scenario.size()),
                              run_options_for(config, options.trace));
  record.metrics.scenario_seed = config.model.scenario_file ? 0 : config.seed;

  json doc = run_record_to_json(record);
  doc["scenario"] = scenario_to_json(scenario);
  if (options.trace && !record.trace.empty()) doc["sweep_trace"] = record.trace;
  const auto path = out / "solution.json";
  write_json(path, doc);

  const auto& convergence = record.metrics.convergence;
  std::cout << "model=" << to_string(model) << " n=" << scenario.size()
            << " average_utility=" << record.metrics.average_utility.to_string()
            << " follower_pct=" << record.metrics.follower_pct.to_decimal(2)
            << " converged=" << (convergence.converged ? "yes" : "no") << "\n";
  std::cout << "wrote " << path.string() << "\n";
  if (!convergence.converged) {
    std::cerr << "did not converge within " << config.model.max_sweeps << " sweeps"
              << (convergence.cycle_detected ? " (cycle detected)" : "") << "\n";
    return kExitQuality;
  }
  return kExitOk;
}

json time_equilibria_json(const std::vector<std::vector<int>>& equilibria) {
  json array = json::array();
  for (const auto& profile : equilibria) array.push_back(profile);
  return array;
}

int cmd_oracle(const CliOptions& options) {
  const AppConfig config = load_config(options);
  const auto out = prepare_out_dir(options);
  const Model model = required_model(config);
  if (model == Model::kSpontaneous) {
    throw ConfigError("model.name: the spontaneous baseline has no game to enumerate");
  }
  const Scenario scenario = load_or_generate_scenario(config);
  const std::uint64_t cap = config.model.enumeration_cap;

  json doc{{"model", to_string(model)}, {"n", scenario.size()}};
  bool check_ok = true;

  if (model == Model::kMarket) {
    MarketOptions market_options;
    market_options.price_grid = price_grid_for(scenario, config.economics.price_grid_fractions);
    market_options.max_sweeps = config.model.max_sweeps;
    const MarketAssignment assignment = assign_sellers(scenario, market_options);
    const auto equilibria = enumerate_equilibria(make_market_game(assignment.market, scenario), cap);

    json list = json::array();
    for (const auto& prices : equilibria) {
      json row = json::array();
      for (const Money& p : prices) row.push_back(rational_to_json(p));
      list.push_back(std::move(row));
    }
    doc["sellers"] = assignment.market.sellers;
    doc["price_equilibria"] = std::move(list);
    doc["equilibrium_count"] = equilibria.size();

    if (options.check_file) {
      const json solution = load_json_file(*options.check_file);
      if (!solution.contains("market")) {
        throw ConfigError("\"" + *options.check_file + "\": no market assignment to check");
      }
      const json& market = solution.at("market");
      std::vector<int> sellers = market.at("sellers").get<std::vector<int>>();
      std::vector<Money> prices;
      for (const json& entry : market.at("prices")) {
        prices.push_back(rational_from_json(entry.at("price"), "check.prices"));
      }
      const bool member = sellers == assignment.market.sellers &&
                          std::find(equilibria.begin(), equilibria.end(), prices) != equilibria.end();
      doc["check"] = {{"file", *options.check_file}, {"member", member}};
      check_ok = member;
    }
  } else {
    TimeGame game;
    std::optional<ScoreState> scores;
    switch (model) {
      case Model::kEvenOut:
        game = make_even_out_game(scenario);
        break;
      case Model::kScore:
        scores = config.model.scores.empty()
                     ? ScoreState::uniform_random(scenario.size(),
                                                  solve_model_seed(config, model, scenario.size()))
                     : ScoreState(config.model.scores);
        game = make_score_game(scenario, *scores);
        break;
      default:
        game = make_cooperative_game(scenario);
        break;
    }
    const auto equilibria = enumerate_equilibria(game, cap);
    doc["equilibria"] = time_equilibria_json(equilibria);
    doc["equilibrium_count"] = equilibria.size();
    if (scores) {
      json values = json::array();
      for (const Rational& s : scores->values()) values.push_back(rational_to_json(s));
      doc["scores"] = std::move(values);
    }
    if (model == Model::kCooperative) {
      const auto [profile, value] = social_optimum(scenario, cap);
      doc["social_optimum"] = {{"profile", profile.departures}, {"value", rational_to_json(value)}};
    }

    if (options.check_file) {
      const json solution = load_json_file(*options.check_file);
      if (!solution.contains("profile")) {
        throw ConfigError("\"" + *options.check_file + "\": no profile to check");
      }
      const auto profile = solution.at("profile").get<std::vector<int>>();
      const bool member = std::find(equilibria.begin(), equilibria.end(), profile) != equilibria.end();
      doc["check"] = {{"file", *options.check_file}, {"member", member}};
      check_ok = member;
    }
  }

  const auto path = out / "oracle.json";
  write_json(path, doc);
  std::cout << "model=" << to_string(model) << " n=" << scenario.size() << " equilibria="
            << doc.at("equilibrium_count").get<std::size_t>() << "\n";
  std::cout << "wrote " << path.string() << "\n";
  if (!check_ok) {
    std::cerr << "check failed: " << *options.check_file << " is not an equilibrium of this game\n";
    return kExitQuality;
  }
  return kExitOk;
}

// "A..B" (or a single "N") -> [min, max].
std::pair<int, int> parse_n_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ConfigError("--n: expected A..B with integer bounds, got \"" + text + "\"");
  }
}

int cmd_sweep(const CliOptions& options) {
  AppConfig config = load_config(options);
  const auto out = prepare_out_dir(options);

  SweepConfig& sweep = config.sweep;
  if (!options.models.empty()) {
    sweep.models.clear();
    for (const std::string& name : options.models) {
      auto model = parse_model(name);
      if (!model) throw ConfigError("--models: unknown model \"" + name + "\"");
      sweep.models.push_back(*model);
    }
  }
  if (options.n_range) {
    const auto [n_min, n_max] = parse_n_range(*options.n_range);
    sweep.n_min = n_min;
    sweep.n_max = n_max;
  }
  sweep.validate();

  const SweepResult result = monte_carlo_sweep(sweep, options.trace);
  const auto csv_path = out / "sweep.csv";
  write_text_file(csv_path.string(), sweep_csv(result.cells));
  write_text_file((out / "sweep_converged_only.csv").string(), sweep_csv(result.converged_cells));

  if (options.trace) {
    std::string lines;
    for (const RunRecord& record : result.records) {
      lines += run_record_to_json(record).dump();
      lines += '\n';
    }
    write_text_file((out / "runs.jsonl").string(), lines);
  }

  if (options.plot) {
    std::vector<ChartSeries> utility_series;
    std::vector<ChartSeries> follower_series;
    for (Model model : sweep.models) {
      ChartSeries utility{to_string(model), {}};
      ChartSeries follower{to_string(model), {}};
      for (const CellStats& cell : result.cells) {
        if (cell.model != model || cell.runs == 0) continue;
        utility.points.emplace_back(cell.n, cell.mean_utility.to_double());
        follower.points.emplace_back(cell.n, cell.mean_follower_pct.to_double());
      }
      utility_series.push_back(std::move(utility));
      follower_series.push_back(std::move(follower));
    }
    write_text_file((out / "mean_utility.svg").string(),
                    render_line_chart("Average individual utility", "Number of vehicles",
                                      "Average utility (SEK)", utility_series));
    write_text_file((out / "follower_pct.svg").string(),
                    render_line_chart("Percentage of followers", "Number of vehicles",
                                      "Followers (%)", follower_series));
  }

  int nonconverged = 0;
  for (const CellStats& cell : result.cells) nonconverged += cell.nonconvergence_count;
  std::cout << "wrote " << csv_path.string() << " (" << result.cells.size() << " cells, "
            << sweep.runs << " runs each, " << nonconverged << " non-converged runs)\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Platoon matching: departure-time games, profit distribution and Monte Carlo sweeps"};
  app.require_subcommand(1);
  CliOptions options;

  auto add_common = [&options](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", options.seed, "override the configured RNG seed");
    cmd->add_option("--out", options.out_dir, "output directory (default: current)");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a random scenario file");
  add_common(gen);

  CLI::App* solve = app.add_subcommand("solve", "solve one scenario under one model");
  add_common(solve);
  solve->add_flag("--trace", options.trace, "record per-sweep profiles in the solution");

  CLI::App* oracle = app.add_subcommand("oracle", "enumerate all pure Nash equilibria");
  add_common(oracle);
  oracle->add_option("--check", options.check_file, "solution file to test for membership")
      ->check(CLI::ExistingFile);

  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over fleet sizes");
  add_common(sweep);
  sweep->add_flag("--plot", options.plot, "emit SVG charts of both metrics");
  sweep->add_flag("--trace", options.trace, "emit a JSON record per run");
  sweep->add_option("--models", options.models, "models to run (comma separated)")->delimiter(',');
  sweep->add_option("--n", options.n_range, "fleet-size range A..B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(options);
    if (solve->parsed()) return cmd_solve(options);
    if (oracle->parsed()) return cmd_oracle(options);
    return cmd_sweep(options);
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace platoon
