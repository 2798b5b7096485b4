#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "marginrisk/decision_map.hpp"
#include "marginrisk/errors.hpp"
#include "marginrisk/io.hpp"
#include "marginrisk/learning.hpp"
#include "marginrisk/pipeline.hpp"
#include "marginrisk/synthdata.hpp"

namespace marginrisk::cli {
namespace {

struct GridSize {
  std::size_t first = 0;
  std::size_t second = 0;
};

// "19x11" -> {19, 11}
GridSize parse_grid(const std::string& text) {
  const auto x = text.find('x');
  GridSize g;
  auto read = [&](std::string_view s, std::size_t& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && v > 0;
  };
  if (x == std::string::npos || !read(std::string_view(text).substr(0, x), g.first) ||
      !read(std::string_view(text).substr(x + 1), g.second)) {
    throw InputError("grid must look like ROWSxCOLS, got '" + text + "'");
  }
  return g;
}

Gust parse_gust(const std::string& text) {
  Gust g;
  std::istringstream in(text);
  char c1 = 0;
  char c2 = 0;
  if (!(in >> g.t_start >> c1 >> g.t_end >> c2 >> g.extra) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw InputError("gust must look like START:END:EXTRA, got '" + text + "'");
  }
  return g;
}

// Writes through `body` to `path`, or to `out` when path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw InputError("failed writing '" + path + "'");
}

struct DroneOptions {
  std::size_t motors = 4;
  double hover = DroneParams{}.hover;
  double rate = 10.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--motors", motors, "Number of motors")->capture_default_str();
    cmd->add_option("--hover", hover, "Normalized hover command in (0, 1)")->capture_default_str();
    cmd->add_option("--rate", rate, "Sample rate in Hz")->capture_default_str();
  }

  DroneParams params() const {
    DroneParams d;
    d.motors = motors;
    d.hover = hover;
    return d;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motor-margin fuzzy risk estimator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option defaults");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for every random stream")->capture_default_str();

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic (margin_mean, margin_std, risk) dataset");
  std::string gen_grid = "19x11";
  std::string gen_out;
  double gen_duration = 60.0;
  DroneOptions gen_drone;
  gen->add_option("--grid", gen_grid, "Wind-mean levels x wind-variance levels")->capture_default_str();
  gen->add_option("--duration", gen_duration, "Seconds per scenario")->capture_default_str();
  gen->add_option("--out,-o", gen_out, "Output CSV (default stdout)");
  gen_drone.add_to(gen);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate one synthetic flight log");
  WindScenario scenario;
  std::vector<std::string> gusts;
  std::string sim_out;
  DroneOptions sim_drone;
  sim->add_option("--wind-mean", scenario.wind_mean, "Mean wind, m/s")->capture_default_str();
  sim->add_option("--wind-var", scenario.wind_var, "Wind variance, m^2/s^2")->capture_default_str();
  sim->add_option("--duration", scenario.duration, "Seconds")->capture_default_str();
  sim->add_option("--gust", gusts, "Extra wind START:END:EXTRA (repeatable)");
  sim->add_option("--out,-o", sim_out, "Output CSV (default stdout)");
  sim_drone.add_to(sim);

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a rule set from a dataset CSV");
  std::string learn_data;
  std::string learn_out;
  std::string ties = "lower";
  learn->add_option("--data", learn_data, "Dataset CSV")->required();
  learn->add_option("--out,-o", learn_out, "Rule set JSON (default stdout)");
  learn->add_option("--ties", ties, "Equal-degree conflict policy")
      ->check(CLI::IsMember({"lower", "higher", "first"}))
      ->capture_default_str();

  // map
  auto* map = app.add_subcommand("map", "Build a gap-free decision map from a rule set");
  std::string map_rules;
  std::string map_out;
  std::string map_csv;
  std::string map_grid = "101x101";
  map->add_option("--rules", map_rules, "Rule set JSON")->required();
  map->add_option("--out,-o", map_out, "Decision map JSON (default stdout)");
  map->add_option("--csv", map_csv, "Also write mean,std,risk,covered CSV");
  map->add_option("--grid", map_grid, "Rows (std) x columns (mean)")->capture_default_str();

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate risk along a flight log");
  std::string est_log;
  std::string est_rules;
  std::string est_map;
  std::string est_out;
  std::string mode = "linear";
  PipelineConfig config;
  double t_low = config.limits.low();
  double t_high = config.limits.high();
  bool with_source = false;
  bool no_fallback = false;
  est->add_option("--log", est_log, "Flight log CSV")->required();
  auto* rules_opt = est->add_option("--rules", est_rules, "Rule set JSON");
  auto* map_opt = est->add_option("--map", est_map, "Decision map JSON");
  est->add_option("--out,-o", est_out, "Risk CSV (default stdout)");
  est->add_option("--window", config.window_seconds, "Margin window, s")->capture_default_str();
  est->add_option("--emit-rate", config.emit_rate_hz, "Records per second, 0 = every frame")
      ->capture_default_str();
  est->add_option("--history", config.accumulator.window, "Accumulator window, samples")
      ->capture_default_str();
  est->add_option("--x-high", config.accumulator.x_high, "High-risk threshold, %")->capture_default_str();
  est->add_option("--x-low", config.accumulator.x_low, "Low-risk threshold, %")->capture_default_str();
  est->add_option("--ki", config.accumulator.k_i, "Accumulation gain, % per step")->capture_default_str();
  est->add_option("--kd", config.accumulator.k_d, "Decay gain, % per step")->capture_default_str();
  est->add_option("--t-low", t_low, "Lower saturation limit, ESC counts")->capture_default_str();
  est->add_option("--t-high", t_high, "Upper saturation limit, ESC counts")->capture_default_str();
  est->add_option("--normalization", mode, "Command normalization")
      ->check(CLI::IsMember({"linear", "root-square"}))
      ->capture_default_str();
  est->add_flag("--with-source", with_source, "Append a source column (rules, map, held)");
  est->add_flag("--no-map-fallback", no_fallback, "Do not build a map from --rules for uncovered inputs");
  rules_opt->excludes(map_opt);

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Print a rule set as a table");
  std::string inspect_path;
  inspect->add_option("rules", inspect_path, "Rule set JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (gen->parsed()) {
      const auto size = parse_grid(gen_grid);
      ScenarioGrid grid;
      grid.mean_levels = size.first;
      grid.var_levels = size.second;
      grid.duration = gen_duration;
      grid.seed = seed;
      const auto pairs = gen_dataset(grid, gen_drone.params(), gen_drone.rate);
      emit(gen_out, out, [&](std::ostream& o) { write_dataset(o, pairs); });
    } else if (sim->parsed()) {
      scenario.seed = seed;
      for (const auto& g : gusts) scenario.gusts.push_back(parse_gust(g));
      const auto frames = simulate_flight(scenario, sim_drone.params(), sim_drone.rate);
      emit(sim_out, out, [&](std::ostream& o) { write_log(o, frames); });
    } else if (learn->parsed()) {
      LearnOptions options;
      options.ties = ties == "higher" ? TiePolicy::kHigherRisk
                     : ties == "first" ? TiePolicy::kFirstSeen
                                       : TiePolicy::kLowerRisk;
      const auto pairs = read_dataset(std::filesystem::path(learn_data));
      const auto rules = learn_ruleset(pairs, default_variables(), options);
      emit(learn_out, out, [&](std::ostream& o) { o << to_json(rules); });
    } else if (map->parsed()) {
      const auto size = parse_grid(map_grid);
      MapOptions options;
      options.rows = size.first;
      options.cols = size.second;
      const auto decision_map = build_decision_map(load_rule_set(map_rules), options);
      emit(map_out, out, [&](std::ostream& o) { o << to_json(decision_map); });
      if (!map_csv.empty()) {
        emit(map_csv, out, [&](std::ostream& o) { write_decision_map_csv(o, decision_map); });
      }
    } else if (est->parsed()) {
      if (est_rules.empty() && est_map.empty()) throw InputError("estimate needs --rules or --map");
      config.limits = SaturationLimits(
          t_low, t_high, mode == "root-square" ? NormalizationMode::kRootSquareSpan : NormalizationMode::kLinear);
      RiskModel model;
      if (!est_rules.empty()) {
        auto engine = std::make_shared<InferenceEngine>(load_rule_set(est_rules));
        if (!no_fallback) model.map = std::make_shared<DecisionMap>(build_decision_map(*engine));
        model.engine = std::move(engine);
      } else {
        model.map = std::make_shared<DecisionMap>(load_decision_map(est_map));
      }
      const auto frames = parse_log(std::filesystem::path(est_log));
      const auto records = run_pipeline(config, model, frames);
      emit(est_out, out, [&](std::ostream& o) { write_records(o, records, with_source); });
    } else if (inspect->parsed()) {
      out << format_rule_table(load_rule_set(inspect_path));
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace marginrisk::cli
