// mechopt command line: evaluate, optimize, singularity-map and bracket-search
// runs driven by a JSON config file. Results land as CSV/JSON files in the
// config's output directory (or the --output-dir override).
//
// Exit codes: 0 success, 1 runtime failure, 2 config parse error,
// 3 invariant violation, 4 no feasible actuator bracket (bracket-search only).

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mechopt/report.hpp"
#include "mechopt/run_config.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNoBracket = 4;

struct CommandArgs {
  std::string config_path;
  std::string output_dir_override;
};

mechopt::RunConfig load(const CommandArgs& args) {
  mechopt::RunConfig config = mechopt::load_run_config(args.config_path);
  if (!args.output_dir_override.empty()) {
    config.output_dir = args.output_dir_override;
  }
  return config;
}

const mechopt::ActuatorModel& require_actuator(const mechopt::RunConfig& config) {
  if (!config.actuator) {
    throw mechopt::ConfigError("this command requires an 'actuator' section in the config");
  }
  return *config.actuator;
}

int cmd_evaluate(const CommandArgs& args) {
  const mechopt::RunConfig config = load(args);
  const mechopt::ActuatorModel& act = require_actuator(config);

  const auto samples = mechopt::sample_workspace(config.design, config.workspace);
  const auto evaluation = mechopt::evaluate_design(config.design, config.workspace, act);

  const std::string map_text = mechopt::workspace_map_csv(samples);
  const std::string eval_text = mechopt::evaluation_json(evaluation);
  mechopt::write_file_atomic(config.output_dir / fs::path("workspace_map.csv"), map_text);
  mechopt::write_file_atomic(config.output_dir / fs::path("evaluation.json"), eval_text);
  return kExitOk;
}

int cmd_optimize(const CommandArgs& args) {
  const mechopt::RunConfig config = load(args);
  const mechopt::ActuatorModel& act = require_actuator(config);
  const mechopt::ParameterSpace space = mechopt::parameter_space_for(config);
  const std::vector<double> x0 = mechopt::seed_vector(config);

  const mechopt::DesignSynthesis synthesis = mechopt::optimize_design(
      x0, space, config.workspace, act, config.objective, config.optimizer);

  const std::string opt_text = mechopt::optimization_json(synthesis, space.kind);
  const std::string trace_text = mechopt::trace_csv(synthesis.result.trace);
  mechopt::write_file_atomic(config.output_dir / fs::path("optimization.json"), opt_text);
  mechopt::write_file_atomic(config.output_dir / fs::path("trace.csv"), trace_text);
  return kExitOk;
}

int cmd_singularity_map(const CommandArgs& args) {
  const mechopt::RunConfig config = load(args);
  const auto samples = mechopt::singularity_map(config.design, config.workspace);
  mechopt::write_file_atomic(config.output_dir / fs::path("singularity_map.csv"),
                             mechopt::singularity_map_csv(samples));
  return kExitOk;
}

int cmd_bracket_search(const CommandArgs& args) {
  const mechopt::RunConfig config = load(args);
  const mechopt::ActuatorModel& act = require_actuator(config);
  const auto evaluation = mechopt::evaluate_design(config.design, config.workspace, act);
  mechopt::write_file_atomic(config.output_dir / fs::path("brackets.json"),
                             mechopt::brackets_json(evaluation));
  return evaluation.feasible_brackets.empty() ? kExitNoBracket : kExitOk;
}

int run(int (*command)(const CommandArgs&), const CommandArgs& args) {
  try {
    return command(args);
  } catch (const mechopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mechopt::DomainError& e) {
    std::cerr << "invalid value: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"2UPS+1U endoscope-holder mechanism analysis and design synthesis"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cli;
    int (*fn)(const CommandArgs&);
    CommandArgs args;
  };
  Sub subs[] = {
      {app.add_subcommand("evaluate", "Evaluate a design over the required workspace"),
       cmd_evaluate, {}},
      {app.add_subcommand("optimize", "Synthesize a design with the Nelder-Mead optimizer"),
       cmd_optimize, {}},
      {app.add_subcommand("singularity-map", "Map det(J) over the required workspace"),
       cmd_singularity_map, {}},
      {app.add_subcommand("bracket-search", "Find feasible actuator windows for a design"),
       cmd_bracket_search, {}},
  };
  for (Sub& sub : subs) {
    sub.cli->add_option("--config", sub.args.config_path, "Path to the JSON run config")
        ->required();
    sub.cli->add_option("--output-dir", sub.args.output_dir_override,
                        "Override the config's output directory");
  }

  CLI11_PARSE(app, argc, argv);

  for (const Sub& sub : subs) {
    if (sub.cli->parsed()) {
      return run(sub.fn, sub.args);
    }
  }
  return kExitRuntime;
}
