#ifndef SATGAME_ESE_HPP
#define SATGAME_ESE_HPP

// Efficient satisfaction equilibria: per-player effort costs, the additive
// potential, the single-deviation graph over profiles and its sinks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/game.hpp"

namespace satgame {

inline constexpr std::size_t kDefaultGraphCap = 10'000;

/// costs[k][i] is the effort player k spends on action i. Lower is cheaper.
struct CostProfile {
  std::vector<std::vector<double>> costs;

  static CostProfile zeros(const SatisfactionGame& game) {
    CostProfile c;
    for (std::size_t n : game.action_counts()) c.costs.emplace_back(n, 0.0);
    return c;
  }
};

inline void validate(const SatisfactionGame& game, const CostProfile& costs) {
  if (costs.costs.size() != game.num_players())
    throw ArgumentError("cost profile has " + std::to_string(costs.costs.size()) +
                        " players, game has " + std::to_string(game.num_players()));
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    if (costs.costs[k].size() != game.action_count(k))
      throw ArgumentError("cost vector of player " + std::to_string(k) +
                          " has length " + std::to_string(costs.costs[k].size()) +
                          ", expected " + std::to_string(game.action_count(k)));
    for (double c : costs.costs[k])
      if (!std::isfinite(c))
        throw ArgumentError("cost of player " + std::to_string(k) +
                            " is not finite");
  }
}

/// phi(a) = sum_k c_k(a_k).
inline double potential(const CostProfile& costs, std::span<const ActionIndex> a) {
  if (a.size() != costs.costs.size())
    throw ArgumentError("profile has " + std::to_string(a.size()) +
                        " entries, cost profile has " +
                        std::to_string(costs.costs.size()) + " players");
  double phi = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] >= costs.costs[k].size())
      throw ArgumentError("action " + std::to_string(a[k]) + " of player " +
                          std::to_string(k) + " has no cost entry");
    phi += costs.costs[k][a[k]];
  }
  return phi;
}

/// Directed graph over profiles (vertex n is the n-th profile in lexicographic
/// order). Edge n -> m: the profiles differ only in player k's action, the new
/// action is in f_k(a_-k) and the potential strictly drops.
struct DeviationGraph {
  ProfileSpace space;
  /// Sorted successor lists; row n of B in sparse form.
  std::vector<std::vector<std::size_t>> successors;
  /// Some pair of single-deviation neighbours has equal potential.
  bool adjacent_potential_ties = false;

  std::size_t vertex_count() const noexcept { return successors.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t e = 0;
    for (const auto& row : successors) e += row.size();
    return e;
  }

  bool has_edge(std::size_t n, std::size_t m) const {
    const auto& row = successors.at(n);
    return std::binary_search(row.begin(), row.end(), m);
  }

  std::vector<std::uint8_t> dense_row(std::size_t n) const {
    std::vector<std::uint8_t> row(vertex_count(), 0);
    for (std::size_t m : successors.at(n)) row[m] = 1;
    return row;
  }
};

inline DeviationGraph build_deviation_graph(const SatisfactionGame& game,
                                            const CostProfile& costs,
                                            std::size_t cap = kDefaultGraphCap) {
  validate(game, costs);
  const ProfileSpace& space = game.space();
  space.require_within(cap, "build_deviation_graph");
  DeviationGraph graph;
  graph.space = space;
  graph.successors.resize(space.size());
  ActionProfile b;
  space.for_each([&](std::size_t n, const ActionProfile& a) {
    const double phi = potential(costs, a);
    b = a;
    auto& row = graph.successors[n];
    for (PlayerIndex k = 0; k < a.size(); ++k) {
      for (ActionIndex alt = 0; alt < game.action_count(k); ++alt) {
        if (alt == a[k]) continue;
        b[k] = alt;
        const double phi_b = potential(costs, b);
        if (phi_b == phi) graph.adjacent_potential_ties = true;
        if (phi_b < phi && game.satisfied(k, b)) row.push_back(space.index_of(b));
      }
      b[k] = a[k];
    }
    std::sort(row.begin(), row.end());
  });
  return graph;
}

/// Vertices with null out-degree.
inline std::vector<ActionProfile> enumerate_ese_sinks(const DeviationGraph& graph) {
  std::vector<ActionProfile> sinks;
  for (std::size_t n = 0; n < graph.vertex_count(); ++n)
    if (graph.successors[n].empty()) sinks.push_back(graph.space.profile_at(n));
  return sinks;
}

/// Sinks at which every player is satisfied.
inline std::vector<ActionProfile> enumerate_ese_sinks_satisfied(
    const SatisfactionGame& game, const DeviationGraph& graph) {
  std::vector<ActionProfile> out;
  for (auto& a : enumerate_ese_sinks(graph))
    if (detail::all_satisfied(game, a)) out.push_back(std::move(a));
  return out;
}

/// GNE of the cost-minimization game: all satisfied, and each player's action
/// is a cheapest member of its correspondence given the others.
inline std::vector<ActionProfile> enumerate_ese_bruteforce(
    const SatisfactionGame& game, const CostProfile& costs,
    std::size_t cap = kDefaultProfileCap) {
  validate(game, costs);
  ActionProfile b;
  return detail::collect(
      game.space(), cap, "enumerate_ese_bruteforce", [&](const ActionProfile& a) {
        if (!detail::all_satisfied(game, a)) return false;
        b = a;
        for (PlayerIndex k = 0; k < a.size(); ++k) {
          const double own = costs.costs[k][a[k]];
          for (ActionIndex alt = 0; alt < game.action_count(k); ++alt) {
            b[k] = alt;
            if (costs.costs[k][alt] < own && game.satisfied(k, b)) return false;
          }
          b[k] = a[k];
        }
        return true;
      });
}

using PotentialFunction = std::function<double(std::span<const ActionIndex>)>;

/// Exact constrained potential check: for every profile in the union of the
/// correspondence graphs, every player k and every a'_k in f_k(a_-k),
///   u_k(a) - u_k(a'_k, a_-k) == phi(a) - phi(a'_k, a_-k)
/// up to a relative tolerance.
inline bool verify_exact_constrained_potential(const SatisfactionGame& game,
                                               const UtilityFunction& utility,
                                               const PotentialFunction& phi,
                                               std::size_t cap = kDefaultProfileCap,
                                               double rel_tol = 1e-9) {
  const ProfileSpace& space = game.space();
  space.require_within(cap, "verify_ecpg");
  bool ok = true;
  ActionProfile b;
  space.for_each([&](std::size_t, const ActionProfile& a) {
    if (!ok) return;
    bool in_union = false;
    for (PlayerIndex k = 0; k < a.size() && !in_union; ++k)
      in_union = game.satisfied(k, a);
    if (!in_union) return;
    b = a;
    const double phi_a = phi(a);
    for (PlayerIndex k = 0; k < a.size() && ok; ++k) {
      const double u_a = utility(k, a);
      for (ActionIndex alt = 0; alt < game.action_count(k); ++alt) {
        if (alt == a[k]) continue;
        b[k] = alt;
        if (!game.satisfied(k, b)) continue;
        const double lhs = u_a - utility(k, b);
        const double rhs = phi_a - phi(b);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (!(std::abs(lhs - rhs) <= rel_tol * scale)) {
          ok = false;
          break;
        }
      }
      b[k] = a[k];
    }
  });
  return ok;
}

/// The cost game with utilities -c_k and potential -phi.
inline bool verify_ecpg(const SatisfactionGame& game, const CostProfile& costs,
                        std::size_t cap = kDefaultProfileCap) {
  validate(game, costs);
  return verify_exact_constrained_potential(
      game,
      [&](PlayerIndex k, std::span<const ActionIndex> a) {
        return -costs.costs[k][a[k]];
      },
      [&](std::span<const ActionIndex> a) { return -potential(costs, a); }, cap);
}

/// F_1 = ... = F_K and non-empty, where F_k = { a : a_k in f_k(a_-k) }.
inline bool check_identical_graphs(const SatisfactionGame& game,
                                   std::size_t cap = kDefaultProfileCap) {
  game.space().require_within(cap, "check_identical_graphs");
  bool identical = true, nonempty = false;
  game.space().for_each([&](std::size_t, const ActionProfile& a) {
    if (!identical) return;
    const bool first = game.satisfied(0, a);
    for (PlayerIndex k = 1; k < a.size(); ++k)
      if (game.satisfied(k, a) != first) {
        identical = false;
        return;
      }
    nonempty = nonempty || first;
  });
  return identical && nonempty;
}

inline void write_edge_list_csv(std::ostream& out, const DeviationGraph& graph) {
  out << "src_index,dst_index\n";
  for (std::size_t n = 0; n < graph.vertex_count(); ++n)
    for (std::size_t m : graph.successors[n]) out << n << ',' << m << '\n';
}

/// B as |A| rows of |A| comma-separated 0/1 entries.
inline void write_dense_matrix_csv(std::ostream& out, const DeviationGraph& graph) {
  for (std::size_t n = 0; n < graph.vertex_count(); ++n) {
    const auto row = graph.dense_row(n);
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (m) out << ',';
      out << static_cast<int>(row[m]);
    }
    out << '\n';
  }
}

}  // namespace satgame

#endif  // SATGAME_ESE_HPP
