#ifndef SATGAME_LEARNING_HPP
#define SATGAME_LEARNING_HPP

// Decentralized learning of a pure satisfaction equilibrium from 1-bit
// feedback: a satisfied player repeats its action, an unsatisfied one draws
// from its exploration distribution.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/game.hpp"
#include "satgame/rng.hpp"

namespace satgame {

enum class ExplorationPolicy { uniform, inverse_count };

inline std::string_view to_string(ExplorationPolicy p) noexcept {
  return p == ExplorationPolicy::uniform ? "uniform" : "inverse-count";
}

inline ExplorationPolicy parse_policy(std::string_view name) {
  if (name == "uniform") return ExplorationPolicy::uniform;
  if (name == "inverse-count") return ExplorationPolicy::inverse_count;
  throw ArgumentError("unknown exploration policy '" + std::string(name) +
                      "' (expected uniform or inverse-count)");
}

/// What one player knows: its own action, its play counts and the last bit.
struct AgentState {
  PlayerIndex player = 0;
  ActionIndex action = 0;
  /// T_{k,a}: delta plus the number of intervals in which `a` was played.
  std::vector<double> counts;
  ExplorationPolicy policy = ExplorationPolicy::uniform;
  bool satisfied = false;
};

/// Full-support distribution an unsatisfied agent draws its next action from.
inline std::vector<double> exploration_distribution(const AgentState& state) {
  const std::size_t n = state.counts.size();
  std::vector<double> pi(n);
  if (state.policy == ExplorationPolicy::uniform) {
    std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(n));
    return pi;
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = 1.0 / state.counts[i];
    norm += pi[i];
  }
  for (double& p : pi) p /= norm;
  return pi;
}

/// The agent's rule for the next interval. Sees only its own state.
inline ActionIndex next_action(const AgentState& state, Rng& rng) {
  if (state.satisfied) return state.action;
  const auto pi = exploration_distribution(state);
  return rng.categorical(pi);
}

/// Satisfaction bit of each player at `a`; the only signal agents receive.
inline std::vector<std::uint8_t> feedback(const SatisfactionGame& game,
                                          std::span<const ActionIndex> a) {
  game.space().validate(a);
  std::vector<std::uint8_t> bits(game.num_players());
  for (PlayerIndex k = 0; k < bits.size(); ++k) bits[k] = game.satisfied(k, a);
  return bits;
}

struct StepResult {
  ActionProfile profile;
  std::vector<std::uint8_t> bits;
};

namespace detail {

inline StepResult play_and_observe(const SatisfactionGame& game,
                                   std::vector<AgentState>& states,
                                   ActionProfile profile) {
  for (auto& s : states) {
    s.action = profile[s.player];
    s.counts[s.action] += 1.0;
  }
  StepResult r{std::move(profile), {}};
  r.bits = feedback(game, r.profile);
  for (auto& s : states) s.satisfied = r.bits[s.player] != 0;
  return r;
}

}  // namespace detail

/// Interval 0: every agent draws from the uniform distribution.
inline std::vector<AgentState> initial_agents(const SatisfactionGame& game,
                                              ExplorationPolicy policy,
                                              double delta, Rng& rng,
                                              StepResult* first = nullptr) {
  if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  std::vector<AgentState> states(game.num_players());
  ActionProfile profile(game.num_players());
  for (PlayerIndex k = 0; k < states.size(); ++k) {
    states[k].player = k;
    states[k].policy = policy;
    states[k].counts.assign(game.action_count(k), delta);
    const std::vector<double> uniform(game.action_count(k),
                                      1.0 / static_cast<double>(game.action_count(k)));
    profile[k] = rng.categorical(uniform);
  }
  auto r = detail::play_and_observe(game, states, std::move(profile));
  if (first) *first = std::move(r);
  return states;
}

/// One interval. Agents move in ascending player order on the shared stream.
inline StepResult step(const SatisfactionGame& game, std::vector<AgentState>& states,
                       Rng& rng) {
  ActionProfile profile(game.num_players());
  for (const auto& s : states) profile[s.player] = next_action(s, rng);
  return detail::play_and_observe(game, states, std::move(profile));
}

struct TrialConfig {
  std::uint64_t seed = 0;
  std::size_t max_intervals = 10'000;
  std::size_t stall_window = 100;
  ExplorationPolicy exploration = ExplorationPolicy::uniform;
  double delta = 1.0;
  bool record_trace = true;

  void validate() const {
    if (max_intervals == 0) throw ArgumentError("max_intervals must be positive");
    if (stall_window == 0) throw ArgumentError("stall_window must be positive");
    if (stall_window > max_intervals)
      throw ArgumentError("stall_window must not exceed max_intervals");
    if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  }
};

enum class TrialOutcome { converged, stall, budget };

inline std::string_view to_string(TrialOutcome o) noexcept {
  switch (o) {
    case TrialOutcome::converged: return "converged";
    case TrialOutcome::stall: return "stall";
    case TrialOutcome::budget: return "budget";
  }
  return "unknown";
}

struct TraceRecord {
  std::size_t interval = 0;
  ActionProfile profile;
  std::vector<std::uint8_t> bits;
  std::vector<double> metric;  // empty unless a metric was supplied
};

struct TrialResult {
  bool converged = false;
  TrialOutcome outcome = TrialOutcome::budget;
  /// Interval at which every player became satisfied.
  std::optional<std::size_t> intervals_to_convergence;
  std::size_t intervals_run = 0;
  ActionProfile final_profile;
  std::vector<TraceRecord> trace;
};

/// Optional per-player observable recorded in the trace (e.g. achieved rate).
using MetricFunction =
    std::function<double(PlayerIndex, std::span<const ActionIndex>)>;

/// Runs the dynamics until all players are satisfied, a stall is detected or
/// the interval budget is spent.
///
/// Stall: for `stall_window` consecutive intervals some player kept its action
/// while another player changed its action at least once.
inline TrialResult run_trial(const SatisfactionGame& game, const TrialConfig& config,
                             const MetricFunction& metric = nullptr) {
  config.validate();
  Rng rng(config.seed);
  TrialResult result;
  StepResult current;
  auto states = initial_agents(game, config.exploration, config.delta, rng, &current);

  const std::size_t K = game.num_players();
  std::vector<std::size_t> last_change(K, 0);
  auto record = [&](std::size_t n) {
    if (!config.record_trace) return;
    TraceRecord rec{n, current.profile, current.bits, {}};
    if (metric)
      for (PlayerIndex k = 0; k < K; ++k) rec.metric.push_back(metric(k, current.profile));
    result.trace.push_back(std::move(rec));
  };
  auto all_ones = [](const std::vector<std::uint8_t>& bits) {
    return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
  };

  std::size_t n = 0;
  record(n);
  while (true) {
    if (all_ones(current.bits)) {
      result.converged = true;
      result.outcome = TrialOutcome::converged;
      result.intervals_to_convergence = n;
      break;
    }
    if (n >= config.stall_window) {
      const std::size_t window_start = n - config.stall_window;
      bool someone_held = false, someone_moved = false;
      for (PlayerIndex k = 0; k < K; ++k) {
        if (last_change[k] <= window_start) someone_held = true;
        else someone_moved = true;
      }
      if (someone_held && someone_moved) {
        result.outcome = TrialOutcome::stall;
        break;
      }
    }
    if (n + 1 >= config.max_intervals) {
      result.outcome = TrialOutcome::budget;
      break;
    }
    ActionProfile previous = current.profile;
    current = step(game, states, rng);
    ++n;
    for (PlayerIndex k = 0; k < K; ++k)
      if (current.profile[k] != previous[k]) last_change[k] = n;
    record(n);
  }
  result.intervals_run = n + 1;
  result.final_profile = current.profile;
  return result;
}

struct BatchStats {
  std::vector<TrialResult> results;
  /// histogram[t] = number of trials that converged at interval t.
  std::vector<std::size_t> histogram;
  std::size_t converged = 0;
  std::size_t stalled = 0;
  std::size_t budget_exhausted = 0;
  double fraction = 0.0;
};

/// Trial t runs with seed trial_seed(config.seed, t). Traces are dropped.
/// Output is independent of `jobs`.
inline BatchStats run_batch(const SatisfactionGame& game, const TrialConfig& config,
                            std::size_t trials, std::size_t jobs = 1) {
  if (trials == 0) throw ArgumentError("trials must be positive");
  config.validate();
  BatchStats stats;
  stats.results.resize(trials);
  auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t t = first; t < trials; t += stride) {
      TrialConfig c = config;
      c.seed = trial_seed(config.seed, t);
      c.record_trace = false;
      stats.results[t] = run_trial(game, c);
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, trials);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker, w, jobs);
  }
  for (const auto& r : stats.results) {
    switch (r.outcome) {
      case TrialOutcome::converged: {
        ++stats.converged;
        const std::size_t t = *r.intervals_to_convergence;
        if (stats.histogram.size() <= t) stats.histogram.resize(t + 1, 0);
        ++stats.histogram[t];
        break;
      }
      case TrialOutcome::stall: ++stats.stalled; break;
      case TrialOutcome::budget: ++stats.budget_exhausted; break;
    }
  }
  stats.fraction = static_cast<double>(stats.converged) / static_cast<double>(trials);
  return stats;
}

/// Profile-level Markov chain induced by uniform exploration; row-major
/// |A| x |A| transition matrix.
inline std::vector<double> uniform_transition_matrix(const SatisfactionGame& game,
                                                     std::size_t cap = 4096) {
  const ProfileSpace& space = game.space();
  space.require_within(cap, "uniform_transition_matrix");
  const std::size_t size = space.size();
  std::vector<double> P(size * size, 0.0);
  std::vector<std::uint8_t> sat(game.num_players());
  space.for_each([&](std::size_t i, const ActionProfile& a) {
    for (PlayerIndex k = 0; k < sat.size(); ++k) sat[k] = game.satisfied(k, a);
    space.for_each([&](std::size_t j, const ActionProfile& b) {
      double p = 1.0;
      for (PlayerIndex k = 0; k < sat.size() && p != 0.0; ++k) {
        if (sat[k]) p *= (b[k] == a[k]) ? 1.0 : 0.0;
        else p /= static_cast<double>(game.action_count(k));
      }
      P[i * size + j] = p;
    });
  });
  return P;
}

struct ChainAnalysis {
  std::vector<ActionProfile> absorbing;
  /// Every state reaches an absorbing state with positive probability.
  bool all_reach_absorbing = false;
  /// Longest shortest path (in intervals) to the absorbing set.
  std::size_t max_steps_to_absorption = 0;
};

/// Absorbing states and reachability of the chain with transition matrix P.
/// The support of P is the same for every full-support exploration rule.
inline ChainAnalysis analyze_chain(const ProfileSpace& space,
                                   std::span<const double> P) {
  const std::size_t size = space.size();
  if (P.size() != size * size) throw ArgumentError("transition matrix has wrong size");
  ChainAnalysis out;
  constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(size, unreached);
  std::queue<std::size_t> frontier;
  for (std::size_t i = 0; i < size; ++i) {
    if (P[i * size + i] == 1.0) {
      out.absorbing.push_back(space.profile_at(i));
      dist[i] = 0;
      frontier.push(i);
    }
  }
  // backward BFS over positive-probability transitions
  while (!frontier.empty()) {
    const std::size_t j = frontier.front();
    frontier.pop();
    for (std::size_t i = 0; i < size; ++i) {
      if (dist[i] == unreached && P[i * size + j] > 0.0) {
        dist[i] = dist[j] + 1;
        frontier.push(i);
      }
    }
  }
  out.all_reach_absorbing =
      std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == unreached; });
  for (std::size_t d : dist)
    if (d != unreached) out.max_steps_to_absorption = std::max(out.max_steps_to_absorption, d);
  return out;
}

}  // namespace satgame

#endif  // SATGAME_LEARNING_HPP
