#ifndef SATGAME_GAME_HPP
#define SATGAME_GAME_HPP

// Finite games in satisfaction form and their pure-strategy equilibrium sets
// (satisfaction, Nash under binary utility, generalized Nash).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/profile_space.hpp"

namespace satgame {

/// oracle(k, a) answers "a_k is in f_k(a_{-k})". Must be pure and thread-safe.
using SatisfactionOracle =
    std::function<bool(PlayerIndex, std::span<const ActionIndex>)>;

/// u_k(a) for constrained normal-form games.
using UtilityFunction =
    std::function<double(PlayerIndex, std::span<const ActionIndex>)>;

/// A finite game in satisfaction form. Immutable; cheap to copy.
///
/// Two representations share one interface: a generated form backed by a
/// predicate, and an explicit form backed by a K x |A| boolean table laid out
/// player-major, profiles in row-major order within each player block.
class SatisfactionGame {
 public:
  SatisfactionGame(std::vector<std::size_t> action_counts,
                   SatisfactionOracle oracle)
      : space_(std::move(action_counts)),
        oracle_(std::make_shared<const SatisfactionOracle>(std::move(oracle))) {
    if (!*oracle_) throw ArgumentError("satisfaction oracle is empty");
  }

  static SatisfactionGame from_table(std::vector<std::size_t> action_counts,
                                     std::vector<std::uint8_t> table) {
    SatisfactionGame game;
    game.space_ = ProfileSpace(std::move(action_counts));
    game.space_.require_within(kDefaultProfileCap, "explicit game");
    const std::size_t expected = game.space_.num_players() * game.space_.size();
    if (table.size() != expected)
      throw ArgumentError("satisfaction table has " +
                          std::to_string(table.size()) + " entries, expected " +
                          std::to_string(expected));
    for (auto& v : table) v = v ? 1 : 0;
    game.table_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
    return game;
  }

  const ProfileSpace& space() const noexcept { return space_; }
  std::size_t num_players() const noexcept { return space_.num_players(); }
  std::span<const std::size_t> action_counts() const noexcept {
    return space_.action_counts();
  }
  std::size_t action_count(PlayerIndex k) const { return space_.action_count(k); }
  bool is_explicit() const noexcept { return table_ != nullptr; }

  /// Unchecked query; `a` must be a valid profile.
  bool satisfied(PlayerIndex k, std::span<const ActionIndex> a) const {
    if (table_) return (*table_)[k * space_.size() + space_.index_of(a)] != 0;
    return (*oracle_)(k, a);
  }

  /// Explicit-form copy: the oracle is queried once per (k, a).
  SatisfactionGame materialize(std::size_t cap = kDefaultProfileCap) const {
    if (table_) return *this;
    space_.require_within(cap, "materialize");
    std::vector<std::uint8_t> table(num_players() * space_.size());
    space_.for_each([&](std::size_t index, const ActionProfile& a) {
      for (PlayerIndex k = 0; k < num_players(); ++k)
        table[k * space_.size() + index] = (*oracle_)(k, a) ? 1 : 0;
    });
    std::vector<std::size_t> counts(action_counts().begin(), action_counts().end());
    return from_table(std::move(counts), std::move(table));
  }

  /// Flattened table (materializing if needed), layout as in from_table.
  std::vector<std::uint8_t> table(std::size_t cap = kDefaultProfileCap) const {
    return *materialize(cap).table_;
  }

 private:
  SatisfactionGame() = default;

  ProfileSpace space_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
  std::shared_ptr<const SatisfactionOracle> oracle_;
};

/// Normal-form game with constrained action sets: feasibility comes from the
/// base game's correspondences, preferences from `utility`.
struct ConstrainedGame {
  SatisfactionGame base;
  UtilityFunction utility;
};

inline SatisfactionGame constant_game(std::vector<std::size_t> action_counts,
                                      bool value) {
  return SatisfactionGame(std::move(action_counts),
                          [value](PlayerIndex, std::span<const ActionIndex>) {
                            return value;
                          });
}

/// Satisfaction game whose correspondences are the best responses of a
/// normal-form game; its SE set is that game's pure NE set.
inline SatisfactionGame best_response_game(std::vector<std::size_t> action_counts,
                                           UtilityFunction utility) {
  auto counts = action_counts;
  return SatisfactionGame(
      std::move(action_counts),
      [counts = std::move(counts), utility = std::move(utility)](
          PlayerIndex k, std::span<const ActionIndex> a) {
        ActionProfile b(a.begin(), a.end());
        const double own = utility(k, b);
        for (ActionIndex alt = 0; alt < counts[k]; ++alt) {
          b[k] = alt;
          if (utility(k, b) > own) return false;
        }
        return true;
      });
}

inline bool is_satisfied(const SatisfactionGame& game, PlayerIndex k,
                         std::span<const ActionIndex> a) {
  game.space().validate_player(k);
  game.space().validate(a);
  return game.satisfied(k, a);
}

inline int binary_utility(const SatisfactionGame& game, PlayerIndex k,
                          std::span<const ActionIndex> a) {
  return is_satisfied(game, k, a) ? 1 : 0;
}

namespace detail {

inline bool all_satisfied(const SatisfactionGame& game,
                          std::span<const ActionIndex> a) {
  for (PlayerIndex k = 0; k < game.num_players(); ++k)
    if (!game.satisfied(k, a)) return false;
  return true;
}

/// True iff f_k(a_{-k}) is non-empty. Leaves `scratch` equal to `a`.
inline bool has_satisfying_action(const SatisfactionGame& game, PlayerIndex k,
                                  ActionProfile& scratch) {
  const ActionIndex keep = scratch[k];
  bool found = false;
  for (ActionIndex alt = 0; alt < game.action_count(k) && !found; ++alt) {
    scratch[k] = alt;
    found = game.satisfied(k, scratch);
  }
  scratch[k] = keep;
  return found;
}

template <class Pred>
std::vector<ActionProfile> collect(const ProfileSpace& space, std::size_t cap,
                                   const char* what, Pred&& pred) {
  space.require_within(cap, what);
  std::vector<ActionProfile> out;
  space.for_each([&](std::size_t, const ActionProfile& a) {
    if (pred(a)) out.push_back(a);
  });
  return out;
}

}  // namespace detail

/// Every player satisfied at `a`.
inline bool is_se(const SatisfactionGame& game, std::span<const ActionIndex> a) {
  game.space().validate(a);
  return detail::all_satisfied(game, a);
}

/// Pure satisfaction equilibria in lexicographic order.
inline std::vector<ActionProfile> enumerate_se(const SatisfactionGame& game,
                                               std::size_t cap = kDefaultProfileCap) {
  return detail::collect(game.space(), cap, "enumerate_se",
                         [&](const ActionProfile& a) {
                           return detail::all_satisfied(game, a);
                         });
}

/// Pure Nash equilibria of the normal-form game with u_k = 1{a_k in f_k(a_-k)}.
inline std::vector<ActionProfile> enumerate_ne_binary(
    const SatisfactionGame& game, std::size_t cap = kDefaultProfileCap) {
  ActionProfile scratch;
  return detail::collect(
      game.space(), cap, "enumerate_ne_binary", [&](const ActionProfile& a) {
        scratch = a;
        for (PlayerIndex k = 0; k < game.num_players(); ++k) {
          // utility 0 is a best reply only when no action yields 1
          if (!game.satisfied(k, a) &&
              detail::has_satisfying_action(game, k, scratch))
            return false;
        }
        return true;
      });
}

inline bool is_gne(const ConstrainedGame& cg, std::span<const ActionIndex> a) {
  const SatisfactionGame& game = cg.base;
  game.space().validate(a);
  if (!detail::all_satisfied(game, a)) return false;
  ActionProfile b(a.begin(), a.end());
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    const double own = cg.utility(k, a);
    if (!std::isfinite(own))
      throw ArgumentError("utility of player " + std::to_string(k) +
                          " is not finite");
    for (ActionIndex alt = 0; alt < game.action_count(k); ++alt) {
      if (alt == a[k]) continue;
      b[k] = alt;
      if (game.satisfied(k, b) && cg.utility(k, b) > own) return false;
    }
    b[k] = a[k];
  }
  return true;
}

/// Generalized Nash equilibria: feasible profiles where no player gains by a
/// deviation that stays inside its correspondence.
inline std::vector<ActionProfile> enumerate_gne(const ConstrainedGame& cg,
                                                std::size_t cap = kDefaultProfileCap) {
  return detail::collect(cg.base.space(), cap, "enumerate_gne",
                         [&](const ActionProfile& a) { return is_gne(cg, a); });
}

/// Least action of player k that is satisfying against every opponent profile.
inline std::optional<ActionIndex> find_clipping_action(
    const SatisfactionGame& game, PlayerIndex k,
    std::size_t cap = kDefaultProfileCap) {
  const ProfileSpace& space = game.space();
  space.validate_player(k);
  space.require_within(cap, "find_clipping_action");
  std::vector<std::uint8_t> clipping(game.action_count(k), 1);
  space.for_each([&](std::size_t, const ActionProfile& a) {
    if (clipping[a[k]] && !game.satisfied(k, a)) clipping[a[k]] = 0;
  });
  for (ActionIndex i = 0; i < clipping.size(); ++i)
    if (clipping[i]) return i;
  return std::nullopt;
}

/// Per-player total orders; orders[k][r] is the action of rank r (rank 0 is
/// the bottom). Profiles carry the induced product order.
using ActionOrders = std::vector<std::vector<ActionIndex>>;

struct LatticeReport {
  bool lattice_ok = false;
  bool nonempty_ok = false;
  bool monotone_ok = false;

  bool all() const noexcept { return lattice_ok && nonempty_ok && monotone_ok; }
};

/// Index order 0 < 1 < ... < N_k - 1 for every player.
inline ActionOrders ascending_orders(const SatisfactionGame& game) {
  ActionOrders orders(game.num_players());
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    orders[k].resize(game.action_count(k));
    for (ActionIndex i = 0; i < orders[k].size(); ++i) orders[k][i] = i;
  }
  return orders;
}

inline ActionOrders descending_orders(const SatisfactionGame& game) {
  ActionOrders orders = ascending_orders(game);
  for (auto& o : orders) std::reverse(o.begin(), o.end());
  return orders;
}

/// Checks the fixed-point existence hypotheses on F(a) = f_1(a_-1) x ... x
/// f_K(a_-K) under the product order built from `orders`:
///   nonempty_ok: F(a) is non-empty for every a;
///   monotone_ok: a <= a' implies b <= b' for all b in F(a), b' in F(a').
/// A finite product of total orders is always a complete lattice.
inline LatticeReport check_lattice_conditions(const SatisfactionGame& game,
                                                const ActionOrders& orders,
                                                std::size_t cap = 10'000) {
  const std::size_t K = game.num_players();
  if (orders.size() != K)
    throw ArgumentError("expected one order per player, got " +
                        std::to_string(orders.size()));
  std::vector<std::vector<std::size_t>> rank(K);
  for (PlayerIndex k = 0; k < K; ++k) {
    const std::size_t n = game.action_count(k);
    if (orders[k].size() != n)
      throw ArgumentError("order of player " + std::to_string(k) +
                          " is not a permutation of its actions");
    rank[k].assign(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const ActionIndex act = orders[k][r];
      if (act >= n || rank[k][act] != n)
        throw ArgumentError("order of player " + std::to_string(k) +
                            " is not a permutation of its actions");
      rank[k][act] = r;
    }
  }
  const ProfileSpace& space = game.space();
  space.require_within(cap, "check_lattice_conditions");

  // Rank range of f_k(a_-k) per profile; lo > hi marks an empty image.
  const std::size_t size = space.size();
  std::vector<std::size_t> lo(size * K), hi(size * K);
  std::vector<std::uint8_t> f_empty(size, 0);
  LatticeReport report;
  report.lattice_ok = true;
  report.nonempty_ok = true;
  ActionProfile scratch;
  space.for_each([&](std::size_t index, const ActionProfile& a) {
    scratch = a;
    for (PlayerIndex k = 0; k < K; ++k) {
      std::size_t mn = game.action_count(k), mx = 0;
      bool any = false;
      for (ActionIndex alt = 0; alt < game.action_count(k); ++alt) {
        scratch[k] = alt;
        if (game.satisfied(k, scratch)) {
          any = true;
          mn = std::min(mn, rank[k][alt]);
          mx = std::max(mx, rank[k][alt]);
        }
      }
      scratch[k] = a[k];
      lo[index * K + k] = mn;
      hi[index * K + k] = mx;
      if (!any) f_empty[index] = 1;
    }
    if (f_empty[index]) report.nonempty_ok = false;
  });

  // For product sets under a product order, "every b <= every b'" reduces to
  // max rank of f_k(a_-k) <= min rank of f_k(a'_-k) for each k.
  report.monotone_ok = true;
  ActionProfile ranks(K), upper(K), upper_profile(K);
  space.for_each([&](std::size_t index, const ActionProfile& a) {
    if (!report.monotone_ok || f_empty[index]) return;
    for (PlayerIndex k = 0; k < K; ++k) ranks[k] = rank[k][a[k]];
    upper = ranks;
    // odometer over rank vectors dominating `ranks`
    while (true) {
      for (PlayerIndex k = 0; k < K; ++k) upper_profile[k] = orders[k][upper[k]];
      const std::size_t j = space.index_of(upper_profile);
      if (!f_empty[j]) {
        for (PlayerIndex k = 0; k < K; ++k) {
          if (hi[index * K + k] > lo[j * K + k]) {
            report.monotone_ok = false;
            return;
          }
        }
      }
      std::size_t k = K;
      while (k-- > 0) {
        if (++upper[k] < game.action_count(k)) break;
        upper[k] = ranks[k];
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  });
  return report;
}

}  // namespace satgame

#endif  // SATGAME_GAME_HPP
