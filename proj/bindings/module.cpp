#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "platoon/config.hpp"
#include "platoon/experiment.hpp"
#include "platoon/json_io.hpp"
#include "platoon/rng.hpp"

namespace py = pybind11;

namespace {

using nlohmann::json;
using namespace platoon;

json parse_doc(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

Model model_from_tag(const std::string& tag) {
  auto model = parse_model(tag);
  if (!model) throw ConfigError("unknown model \"" + tag + "\"");
  return *model;
}

std::string generate_scenario_json(int n, std::uint64_t seed, int window_start, int window_end,
                                   int max_delay) {
  FleetConfig fleet{n, window_start, window_end, max_delay};
  return scenario_to_json(generate_scenario(fleet, EconomicsConfig{}, seed)).dump();
}

std::string solve_json(const std::string& model_tag, const std::string& scenario_text,
                       std::uint64_t seed, int max_sweeps) {
  const Model model = model_from_tag(model_tag);
  const Scenario scenario = scenario_from_json(parse_doc(scenario_text, "scenario"));
  RunOptions options;
  options.max_sweeps = max_sweeps;
  const RunRecord record = run_once(model, scenario, seed, options);
  return run_record_to_json(record).dump();
}

std::string equilibria_json(const std::string& model_tag, const std::string& scenario_text,
                            std::uint64_t seed, std::uint64_t cap) {
  const Model model = model_from_tag(model_tag);
  const Scenario scenario = scenario_from_json(parse_doc(scenario_text, "scenario"));

  json doc{{"model", model_tag}, {"n", scenario.size()}};
  if (model == Model::kMarket) {
    const MarketAssignment assignment = assign_sellers(scenario);
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
    return doc.dump();
  }
  if (model == Model::kSpontaneous) {
    throw ConfigError("the spontaneous baseline has no game to enumerate");
  }

  TimeGame game;
  std::optional<ScoreState> scores;
  switch (model) {
    case Model::kEvenOut:
      game = make_even_out_game(scenario);
      break;
    case Model::kScore:
      scores = ScoreState::uniform_random(scenario.size(), seed);
      game = make_score_game(scenario, *scores);
      break;
    default:
      game = make_cooperative_game(scenario);
      break;
  }
  const auto equilibria = enumerate_equilibria(game, cap);
  doc["equilibria"] = equilibria;
  doc["equilibrium_count"] = equilibria.size();
  if (model == Model::kCooperative) {
    const auto [profile, value] = social_optimum(scenario, cap);
    doc["social_optimum"] = {{"profile", profile.departures}, {"value", rational_to_json(value)}};
  }
  return doc.dump();
}

std::string sweep_csv_from_config(const std::string& config_text) {
  const AppConfig config = app_config_from_json(parse_doc(config_text, "config"));
  config.sweep.validate();
  return sweep_csv(monte_carlo_sweep(config.sweep).cells);
}

std::vector<std::string> model_tags() {
  std::vector<std::string> tags;
  for (Model model : all_models()) tags.push_back(to_string(model));
  return tags;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Platoon matching games: scenario generation, equilibrium solving and Monte Carlo sweeps";

  py::register_exception<ConfigError>(m, "ConfigError");

  m.def("models", &model_tags, "Tags of the supported distribution models.");
  m.def("generate_scenario_json", &generate_scenario_json, py::arg("n") = 10, py::arg("seed") = 1,
        py::arg("window_start") = 0, py::arg("window_end") = 30, py::arg("max_delay") = 10,
        "Random fleet under the standard economics, as scenario JSON text.");
  m.def("solve_json", &solve_json, py::arg("model"), py::arg("scenario"), py::arg("seed") = 1,
        py::arg("max_sweeps") = 100,
        "Solve one scenario under one model; returns the run record as JSON text.");
  m.def("equilibria_json", &equilibria_json, py::arg("model"), py::arg("scenario"),
        py::arg("seed") = 1, py::arg("cap") = 1'000'000,
        "Enumerate all pure Nash equilibria by brute force; returns JSON text.");
  m.def("sweep_csv_from_config", &sweep_csv_from_config, py::arg("config"),
        "Run a Monte Carlo sweep from a configuration JSON text; returns the CSV.");
  m.def("derive_seed",
        [](std::uint64_t base, const std::string& tag, std::uint64_t a, std::uint64_t b) {
          return derive_seed(base, tag, a, b);
        },
        py::arg("base"), py::arg("tag"), py::arg("a") = 0, py::arg("b") = 0,
        "Deterministic child seed used by the sweep harness.");
}
