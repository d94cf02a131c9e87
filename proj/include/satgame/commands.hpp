#ifndef SATGAME_COMMANDS_HPP
#define SATGAME_COMMANDS_HPP

// Subcommands behind the satgame executable. Each run writes its outputs and
// a manifest.json holding every resolved parameter; replaying a manifest
// reproduces the outputs byte for byte.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "satgame/errors.hpp"
#include "satgame/ese.hpp"
#include "satgame/game.hpp"
#include "satgame/interference.hpp"
#include "satgame/io.hpp"
#include "satgame/learning.hpp"
#include "satgame/mixed.hpp"

namespace satgame::cli {

using nlohmann::json;

struct CommandOptions {
  std::string command;  // enumerate | learn | sweep | ese-graph
  std::optional<std::string> game_path;
  std::optional<std::string> scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  ExplorationPolicy policy = ExplorationPolicy::uniform;
  std::size_t stall_window = 100;
  std::size_t max_intervals = 10'000;
  double delta = 1.0;
  std::size_t jobs = 1;
  std::size_t trace_trial = 0;
  std::optional<ic::PowerGrid> grid;  // overrides the scenario's spacing
  bool dense = false;                 // ese-graph: also write matrix B
};

/// Resolved parameters of a run. jobs is deliberately absent: it never
/// changes outputs.
inline json manifest_json(const CommandOptions& o) {
  json inputs = json::object();
  if (o.game_path) inputs["game"] = *o.game_path;
  if (o.scenario_path) inputs["scenario"] = *o.scenario_path;
  json params = json::object();
  if (o.command == "learn") {
    params = {{"trials", o.trials},
              {"policy", std::string(to_string(o.policy))},
              {"stall_window", o.stall_window},
              {"max_intervals", o.max_intervals},
              {"delta", o.delta},
              {"trace_trial", o.trace_trial}};
  } else if (o.command == "ese-graph") {
    params = {{"dense", o.dense}};
  }
  if (o.grid) params["grid"] = std::string(ic::to_string(*o.grid));
  return json{{"command", o.command},
              {"inputs", std::move(inputs)},
              {"seed", o.seed},
              {"out", o.out_dir},
              {"parameters", std::move(params)}};
}

inline CommandOptions options_from_manifest(const json& m) {
  try {
    CommandOptions o;
    o.command = m.at("command").get<std::string>();
    const json& inputs = m.at("inputs");
    if (inputs.contains("game")) o.game_path = inputs["game"].get<std::string>();
    if (inputs.contains("scenario")) o.scenario_path = inputs["scenario"].get<std::string>();
    o.seed = m.at("seed").get<std::uint64_t>();
    o.out_dir = m.at("out").get<std::string>();
    const json& p = m.at("parameters");
    if (p.contains("trials")) o.trials = p["trials"].get<std::size_t>();
    if (p.contains("policy")) o.policy = parse_policy(p["policy"].get<std::string>());
    if (p.contains("stall_window")) o.stall_window = p["stall_window"].get<std::size_t>();
    if (p.contains("max_intervals")) o.max_intervals = p["max_intervals"].get<std::size_t>();
    if (p.contains("delta")) o.delta = p["delta"].get<double>();
    if (p.contains("trace_trial")) o.trace_trial = p["trace_trial"].get<std::size_t>();
    if (p.contains("dense")) o.dense = p["dense"].get<bool>();
    if (p.contains("grid")) o.grid = ic::parse_grid(p["grid"].get<std::string>());
    return o;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

namespace detail {

/// The loaded input: either an explicit game document or a channel scenario.
struct Input {
  SatisfactionGame game;
  CostProfile costs;
  ConstrainedGame constrained;
  std::optional<ic::Channel> channel;
  ActionOrders orders;
};

inline Input load_input(const CommandOptions& o) {
  if (o.game_path.has_value() == o.scenario_path.has_value())
    throw ArgumentError("exactly one of --game or --scenario is required");
  if (o.scenario_path) {
    ic::Channel ch = io::channel_from_json(io::read_json_file(*o.scenario_path));
    if (o.grid) ch.grid = *o.grid;
    const SatisfactionGame game = ic::build_satisfaction_game(ch).materialize();
    auto scenario = ic::build_constrained_game(ch);
    ConstrainedGame cg{scenario.game.base.materialize(), scenario.game.utility};
    // power levels ordered by ">=", as for the channel's existence argument
    return {game, std::move(scenario.costs), std::move(cg), ch, descending_orders(game)};
  }
  if (o.grid) throw ArgumentError("--grid applies to scenarios only");
  io::GameDocument doc = io::game_from_json(io::read_json_file(*o.game_path));
  CostProfile costs = doc.costs ? *doc.costs : CostProfile::zeros(doc.game);
  ConstrainedGame cg{doc.game, doc.utility()};
  auto orders = ascending_orders(doc.game);
  return {std::move(doc.game), std::move(costs), std::move(cg), std::nullopt,
          std::move(orders)};
}

inline bool is_subset(const std::vector<ActionProfile>& a,
                      const std::vector<ActionProfile>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<std::size_t> indices_of(const ProfileSpace& space,
                                           const std::vector<ActionProfile>& profiles) {
  std::vector<std::size_t> out;
  for (const auto& a : profiles) out.push_back(space.index_of(a));
  return out;
}

inline std::string join(const ActionProfile& a, char sep) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += sep;
    s += std::to_string(a[k]);
  }
  return s;
}

inline std::string path_in(const CommandOptions& o, const char* name) {
  return (std::filesystem::path(o.out_dir) / name).string();
}

inline void run_enumerate(const CommandOptions& o, const Input& in, std::ostream& log) {
  const auto se = enumerate_se(in.game);
  const auto ne = enumerate_ne_binary(in.game);
  const auto gne = enumerate_gne(in.constrained);
  const auto ese = enumerate_ese_bruteforce(in.game, in.costs);
  const auto graph = build_deviation_graph(in.game, in.costs);
  const auto sinks = enumerate_ese_sinks(graph);
  const auto sinks_sat = enumerate_ese_sinks_satisfied(in.game, graph);
  const auto lattice = check_lattice_conditions(in.game, in.orders, kDefaultGraphCap);

  json clipping = json::array();
  for (PlayerIndex k = 0; k < in.game.num_players(); ++k) {
    const auto c = find_clipping_action(in.game, k);
    clipping.push_back(c ? json(*c) : json(nullptr));
  }
  json epsilon = nullptr;
  if (epsilon_se_exists(in.game)) {
    const auto r = uniform_epsilon_report(in.game);
    epsilon = {{"uniform_epsilon", r.epsilon}, {"worst_case_bound", r.worst_case_bound}};
  }
  const json checks = {
      {"se_subset_ne", is_subset(se, ne)},
      // GNE live in the constrained game, whose correspondences may add a
      // fallback action; inclusion holds against that game's SE set
      {"gne_subset_se", is_subset(gne, enumerate_se(in.constrained.base))},
      {"ese_subset_se", is_subset(ese, se)},
      {"ese_sinks_match_bruteforce", sinks_sat == ese},
      {"ecpg", verify_ecpg(in.game, in.costs)},
      {"identical_graphs", check_identical_graphs(in.game)}};
  const json report = {
      {"input_kind", in.channel ? "scenario" : "game"},
      {"players", in.game.num_players()},
      {"actions", std::vector<std::size_t>(in.game.action_counts().begin(),
                                           in.game.action_counts().end())},
      {"profiles", in.game.space().size()},
      {"se", io::profiles_to_json(se)},
      {"ne_binary", io::profiles_to_json(ne)},
      {"gne", io::profiles_to_json(gne)},
      {"ese_bruteforce", io::profiles_to_json(ese)},
      {"ese_sinks", io::profiles_to_json(sinks)},
      {"ese_sinks_satisfied", io::profiles_to_json(sinks_sat)},
      {"clipping_actions", clipping},
      {"adjacent_potential_ties", graph.adjacent_potential_ties},
      {"epsilon", epsilon},
      {"lattice_conditions", {{"lattice_ok", lattice.lattice_ok},
                    {"nonempty_ok", lattice.nonempty_ok},
                    {"monotone_ok", lattice.monotone_ok}}},
      {"existence_condition",
       in.channel ? json(ic::existence_condition(*in.channel)) : json(nullptr)},
      {"checks", checks}};
  io::write_text_file(path_in(o, "report.json"), report.dump(2) + "\n");

  log << "profiles: " << in.game.space().size() << '\n'
      << "SE: " << se.size() << '\n'
      << "NE (binary utility): " << ne.size() << '\n'
      << "GNE: " << gne.size() << '\n'
      << "ESE (brute force): " << ese.size() << '\n'
      << "ESE (graph sinks, satisfied): " << sinks_sat.size() << " of "
      << sinks.size() << " sinks\n";
  for (PlayerIndex k = 0; k < in.game.num_players(); ++k)
    log << "clipping action of player " << k << ": "
        << (clipping[k].is_null() ? std::string("none") : clipping[k].dump()) << '\n';
  for (const auto& [name, ok] : checks.items())
    log << "check " << name << ": " << (ok.get<bool>() ? "pass" : "fail") << '\n';
}

inline void run_learn(const CommandOptions& o, const Input& in, std::ostream& log) {
  TrialConfig config;
  config.seed = o.seed;
  config.max_intervals = o.max_intervals;
  config.stall_window = o.stall_window;
  config.exploration = o.policy;
  config.delta = o.delta;
  const BatchStats stats = run_batch(in.game, config, o.trials, o.jobs);

  std::ostringstream trials;
  trials << "trial,seed,outcome,intervals_to_convergence,intervals_run,final_profile\n";
  for (std::size_t t = 0; t < stats.results.size(); ++t) {
    const auto& r = stats.results[t];
    trials << t << ',' << trial_seed(o.seed, t) << ',' << to_string(r.outcome) << ','
           << (r.intervals_to_convergence ? std::to_string(*r.intervals_to_convergence) : "")
           << ',' << r.intervals_run << ',' << join(r.final_profile, ';') << '\n';
  }
  io::write_text_file(path_in(o, "trials.csv"), trials.str());

  std::ostringstream hist;
  hist << "interval,count\n";
  for (std::size_t i = 0; i < stats.histogram.size(); ++i)
    hist << i << ',' << stats.histogram[i] << '\n';
  io::write_text_file(path_in(o, "histogram.csv"), hist.str());

  const json summary = {{"trials", o.trials},
                        {"converged", stats.converged},
                        {"stalled", stats.stalled},
                        {"budget_exhausted", stats.budget_exhausted},
                        {"fraction", stats.fraction},
                        {"histogram", stats.histogram},
                        {"seed", o.seed},
                        {"policy", std::string(to_string(o.policy))}};
  io::write_text_file(path_in(o, "summary.json"), summary.dump(2) + "\n");

  // one full trace, with achieved rates when the input is a channel
  if (o.trace_trial >= o.trials) throw ArgumentError("--trace-trial must be below --trials");
  TrialConfig trace_config = config;
  trace_config.seed = trial_seed(o.seed, o.trace_trial);
  MetricFunction metric;
  if (in.channel) {
    metric = [ch = *in.channel, grid = ic::power_grids(*in.channel)](
                 PlayerIndex k, std::span<const ActionIndex> a) {
      return ic::profile_rate(ch, grid, k, a);
    };
  }
  const TrialResult traced = run_trial(in.game, trace_config, metric);
  std::ostringstream trace;
  trace << "interval,player,action,satisfied,metric\n";
  for (const auto& rec : traced.trace)
    for (PlayerIndex k = 0; k < rec.profile.size(); ++k)
      trace << rec.interval << ',' << k << ',' << rec.profile[k] << ','
            << static_cast<int>(rec.bits[k]) << ','
            << (rec.metric.empty() ? std::string() : io::format_double(rec.metric[k]))
            << '\n';
  io::write_text_file(path_in(o, "trace.csv"), trace.str());

  log << "trials: " << o.trials << '\n'
      << "converged: " << stats.converged << " (fraction " << io::format_double(stats.fraction)
      << ")\n"
      << "stalled: " << stats.stalled << '\n'
      << "budget exhausted: " << stats.budget_exhausted << '\n';
}

inline void run_sweep(const CommandOptions& o, const Input& in, std::ostream& log) {
  if (!in.channel) throw ArgumentError("sweep requires --scenario");
  const auto rows = ic::annotated_sweep(*in.channel);
  std::ostringstream csv;
  csv << "p1_index,p2_index,u1,u2,is_SE,is_ESE,is_GNE\n";
  for (const auto& r : rows)
    csv << r.p1_index << ',' << r.p2_index << ',' << io::format_double(r.u1) << ','
        << io::format_double(r.u2) << ',' << int(r.is_se) << ',' << int(r.is_ese) << ','
        << int(r.is_gne) << '\n';
  io::write_text_file(path_in(o, "sweep.csv"), csv.str());
  log << "rows: " << rows.size() << '\n';
}

inline void run_ese_graph(const CommandOptions& o, const Input& in, std::ostream& log) {
  const auto graph = build_deviation_graph(in.game, in.costs);
  std::ostringstream edges;
  write_edge_list_csv(edges, graph);
  io::write_text_file(path_in(o, "edges.csv"), edges.str());
  if (o.dense) {
    std::ostringstream dense;
    write_dense_matrix_csv(dense, graph);
    io::write_text_file(path_in(o, "matrix_b.csv"), dense.str());
  }
  const auto& space = in.game.space();
  const json ese = {
      {"vertices", graph.vertex_count()},
      {"edges", graph.edge_count()},
      {"adjacent_potential_ties", graph.adjacent_potential_ties},
      {"sinks", indices_of(space, enumerate_ese_sinks(graph))},
      {"sinks_satisfied", indices_of(space, enumerate_ese_sinks_satisfied(in.game, graph))},
      {"bruteforce", indices_of(space, enumerate_ese_bruteforce(in.game, in.costs))}};
  io::write_text_file(path_in(o, "ese.json"), ese.dump(2) + "\n");
  log << "vertices: " << graph.vertex_count() << '\n'
      << "edges: " << graph.edge_count() << '\n'
      << "sinks: " << ese["sinks"].size() << " (satisfied "
      << ese["sinks_satisfied"].size() << ")\n";
}

}  // namespace detail

/// Runs one subcommand; throws on any error.
inline void run_command(const CommandOptions& o, std::ostream& log) {
  if (o.command != "enumerate" && o.command != "learn" && o.command != "sweep" &&
      o.command != "ese-graph")
    throw ArgumentError("unknown command '" + o.command + "'");
  const detail::Input in = detail::load_input(o);
  std::filesystem::create_directories(o.out_dir);
  if (o.command == "enumerate") detail::run_enumerate(o, in, log);
  else if (o.command == "learn") detail::run_learn(o, in, log);
  else if (o.command == "sweep") detail::run_sweep(o, in, log);
  else detail::run_ese_graph(o, in, log);
  io::write_text_file(detail::path_in(o, "manifest.json"), manifest_json(o).dump(2) + "\n");
}

/// Re-runs the command recorded in a manifest, optionally into another
/// directory.
inline void replay(const std::string& manifest_path,
                   const std::optional<std::string>& out_dir, std::ostream& log,
                   std::size_t jobs = 1) {
  CommandOptions o = options_from_manifest(io::read_json_file(manifest_path));
  if (out_dir) o.out_dir = *out_dir;
  o.jobs = jobs;
  run_command(o, log);
}

}  // namespace satgame::cli

#endif  // SATGAME_COMMANDS_HPP
