#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "satgame/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Satisfaction-equilibrium toolkit for finite games"};
  app.require_subcommand(1);

  satgame::cli::CommandOptions o;
  std::string policy = "uniform";
  std::optional<std::string> grid;

  auto* enumerate = app.add_subcommand("enumerate", "equilibrium sets and inclusion checks");
  auto* learn = app.add_subcommand("learn", "Monte-Carlo runs of the 1-bit learning rule");
  auto* sweep = app.add_subcommand("sweep", "annotated rate region of a channel scenario");
  auto* graph = app.add_subcommand("ese-graph", "deviation graph edge list and sinks");
  auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");

  for (auto* cmd : {enumerate, learn, sweep, graph}) {
    cmd->add_option("--game", o.game_path, "explicit game JSON file");
    cmd->add_option("--scenario", o.scenario_path, "interference-channel scenario JSON file");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("--grid", grid, "override scenario power grid (linear|logarithmic)");
    cmd->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  }
  learn->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  learn->add_option("--policy", policy, "exploration: uniform|inverse-count")
      ->capture_default_str();
  learn->add_option("--stall-window", o.stall_window, "stall detection window")
      ->capture_default_str();
  learn->add_option("--max-intervals", o.max_intervals, "interval budget per trial")
      ->capture_default_str();
  learn->add_option("--delta", o.delta, "initial play count")->capture_default_str();
  learn->add_option("--trace-trial", o.trace_trial, "trial whose full trace is written")
      ->capture_default_str();
  graph->add_flag("--dense", o.dense, "also write the dense matrix B");

  std::string manifest;
  std::optional<std::string> replay_out;
  std::size_t replay_jobs = 1;
  replay->add_option("--manifest", manifest, "manifest.json of an earlier run")->required();
  replay->add_option("--out", replay_out, "output directory (default: the recorded one)");
  replay->add_option("--jobs", replay_jobs, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) {
      satgame::cli::replay(manifest, replay_out, std::cout, replay_jobs);
      return 0;
    }
    o.command = app.get_subcommands().front()->get_name();
    o.policy = satgame::parse_policy(policy);
    if (grid) o.grid = satgame::ic::parse_grid(*grid);
    satgame::cli::run_command(o, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
