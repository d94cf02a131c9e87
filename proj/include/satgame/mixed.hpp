#ifndef SATGAME_MIXED_HPP
#define SATGAME_MIXED_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/game.hpp"

namespace satgame {

inline constexpr double kProbabilityTolerance = 1e-12;

/// One probability vector per player.
struct MixedProfile {
  std::vector<std::vector<double>> distributions;

  static MixedProfile uniform(const SatisfactionGame& game) {
    MixedProfile pi;
    for (PlayerIndex k = 0; k < game.num_players(); ++k) {
      const std::size_t n = game.action_count(k);
      pi.distributions.emplace_back(n, 1.0 / static_cast<double>(n));
    }
    return pi;
  }

  /// Point mass on `a`.
  static MixedProfile degenerate(const SatisfactionGame& game,
                                 std::span<const ActionIndex> a) {
    game.space().validate(a);
    MixedProfile pi;
    for (PlayerIndex k = 0; k < game.num_players(); ++k) {
      pi.distributions.emplace_back(game.action_count(k), 0.0);
      pi.distributions.back()[a[k]] = 1.0;
    }
    return pi;
  }

  /// Actions with probability above the tolerance.
  std::vector<ActionIndex> support(PlayerIndex k) const {
    std::vector<ActionIndex> s;
    const auto& d = distributions.at(k);
    for (ActionIndex i = 0; i < d.size(); ++i)
      if (d[i] > kProbabilityTolerance) s.push_back(i);
    return s;
  }
};

inline void validate(const SatisfactionGame& game, const MixedProfile& pi) {
  if (pi.distributions.size() != game.num_players())
    throw ArgumentError("mixed profile has " +
                        std::to_string(pi.distributions.size()) +
                        " distributions, game has " +
                        std::to_string(game.num_players()) + " players");
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    const auto& d = pi.distributions[k];
    if (d.size() != game.action_count(k))
      throw ArgumentError("distribution of player " + std::to_string(k) +
                          " has length " + std::to_string(d.size()) +
                          ", expected " + std::to_string(game.action_count(k)));
    double sum = 0.0;
    for (double p : d) {
      if (!(p >= 0.0) || p > 1.0)
        throw ArgumentError("distribution of player " + std::to_string(k) +
                            " has an entry outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance)
      throw ArgumentError("distribution of player " + std::to_string(k) +
                          " does not sum to 1");
  }
}

/// Pr[a_k in f_k(a_-k)] when a ~ pi, summed over profiles in lexicographic
/// order.
inline double satisfaction_probability(const SatisfactionGame& game,
                                       const MixedProfile& pi, PlayerIndex k,
                                       std::size_t cap = kDefaultProfileCap) {
  game.space().validate_player(k);
  validate(game, pi);
  game.space().require_within(cap, "satisfaction_probability");
  double total = 0.0;
  game.space().for_each([&](std::size_t, const ActionProfile& a) {
    double weight = 1.0;
    for (PlayerIndex j = 0; j < a.size() && weight != 0.0; ++j)
      weight *= pi.distributions[j][a[j]];
    if (weight != 0.0 && game.satisfied(k, a)) total += weight;
  });
  return std::clamp(total, 0.0, 1.0);
}

/// Probability route: every player satisfied with probability one.
inline bool is_mixed_se(const SatisfactionGame& game, const MixedProfile& pi,
                        std::size_t cap = kDefaultProfileCap) {
  for (PlayerIndex k = 0; k < game.num_players(); ++k)
    if (satisfaction_probability(game, pi, k, cap) < 1.0 - kProbabilityTolerance)
      return false;
  return true;
}

/// Support route: every profile of supp(pi_1) x ... x supp(pi_K) is a pure SE.
inline bool is_mixed_se_by_support(const SatisfactionGame& game,
                                   const MixedProfile& pi,
                                   std::size_t cap = kDefaultProfileCap) {
  validate(game, pi);
  game.space().require_within(cap, "is_mixed_se_by_support");
  std::vector<std::vector<ActionIndex>> supports;
  for (PlayerIndex k = 0; k < game.num_players(); ++k)
    supports.push_back(pi.support(k));
  std::vector<std::size_t> counts;
  for (const auto& s : supports) counts.push_back(s.size());
  const ProfileSpace rectangle(std::move(counts));
  bool ok = true;
  ActionProfile a(game.num_players());
  rectangle.for_each([&](std::size_t, const ActionProfile& pos) {
    if (!ok) return;
    for (PlayerIndex k = 0; k < pos.size(); ++k) a[k] = supports[k][pos[k]];
    ok = detail::all_satisfied(game, a);
  });
  return ok;
}

inline bool is_epsilon_se(const SatisfactionGame& game, const MixedProfile& pi,
                          double eps, std::size_t cap = kDefaultProfileCap) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw ArgumentError("epsilon must lie in (0, 1], got " + std::to_string(eps));
  for (PlayerIndex k = 0; k < game.num_players(); ++k)
    if (satisfaction_probability(game, pi, k, cap) <
        1.0 - eps - kProbabilityTolerance)
      return false;
  return true;
}

/// Every player is satisfied in at least one profile.
inline bool epsilon_se_exists(const SatisfactionGame& game,
                              std::size_t cap = kDefaultProfileCap) {
  game.space().require_within(cap, "epsilon_se_exists");
  std::vector<bool> seen(game.num_players(), false);
  std::size_t remaining = game.num_players();
  game.space().for_each([&](std::size_t, const ActionProfile& a) {
    if (remaining == 0) return;
    for (PlayerIndex k = 0; k < a.size(); ++k) {
      if (!seen[k] && game.satisfied(k, a)) {
        seen[k] = true;
        --remaining;
      }
    }
  });
  return remaining == 0;
}

struct UniformEpsilonReport {
  /// Smallest epsilon for which the uniform profile is an epsilon-SE.
  double epsilon = 0.0;
  /// 1 - prod_j 1/N_j: the value reached when each player is satisfied in a
  /// single profile and no profile satisfies everyone.
  double worst_case_bound = 0.0;
  std::vector<double> satisfaction_probabilities;
};

inline UniformEpsilonReport uniform_epsilon_report(
    const SatisfactionGame& game, std::size_t cap = kDefaultProfileCap) {
  if (!epsilon_se_exists(game, cap))
    throw DomainError("no epsilon-SE exists: some player is never satisfied");
  const MixedProfile uniform = MixedProfile::uniform(game);
  UniformEpsilonReport report;
  double min_probability = 1.0;
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    const double p = satisfaction_probability(game, uniform, k, cap);
    report.satisfaction_probabilities.push_back(p);
    min_probability = std::min(min_probability, p);
  }
  report.epsilon = 1.0 - min_probability;
  double product = 1.0;
  for (std::size_t n : game.action_counts()) product /= static_cast<double>(n);
  report.worst_case_bound = 1.0 - product;
  return report;
}

inline double uniform_epsilon(const SatisfactionGame& game,
                              std::size_t cap = kDefaultProfileCap) {
  return uniform_epsilon_report(game, cap).epsilon;
}

}  // namespace satgame

#endif  // SATGAME_MIXED_HPP
