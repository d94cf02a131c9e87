#ifndef SATGAME_INTERFERENCE_HPP
#define SATGAME_INTERFERENCE_HPP

// Two-link interference channel with discrete power levels: each link wants
// a Shannon rate of at least its target.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/ese.hpp"
#include "satgame/game.hpp"
#include "satgame/rng.hpp"

namespace satgame::ic {

enum class PowerGrid { linear, logarithmic };

inline std::string_view to_string(PowerGrid g) noexcept {
  return g == PowerGrid::linear ? "linear" : "logarithmic";
}

inline PowerGrid parse_grid(std::string_view name) {
  if (name == "linear") return PowerGrid::linear;
  if (name == "logarithmic") return PowerGrid::logarithmic;
  throw ArgumentError("unknown power grid '" + std::string(name) +
                      "' (expected linear or logarithmic)");
}

/// Nonzero levels of a logarithmic grid span this many decades below p_max.
inline constexpr double kLogGridDecades = 3.0;

struct Channel {
  /// gains[j][k]: gain from transmitter k to receiver j.
  std::array<std::array<double, 2>, 2> gains{};
  std::array<double, 2> noise{1.0, 1.0};
  std::array<double, 2> pmax{1.0, 1.0};
  std::array<std::size_t, 2> levels{2, 2};
  /// Rate targets in bits/s/Hz.
  std::array<double, 2> targets{0.0, 0.0};
  /// Extra cost of not transmitting, on top of p_max.
  double delta = 0.01;
  PowerGrid grid = PowerGrid::linear;

  void validate() const {
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        if (!(gains[j][k] >= 0.0) || !std::isfinite(gains[j][k]))
          throw ArgumentError("channel gains must be finite and non-negative");
    for (std::size_t k = 0; k < 2; ++k) {
      if (!(noise[k] > 0.0) || !std::isfinite(noise[k]))
        throw ArgumentError("noise variances must be positive");
      if (!(pmax[k] > 0.0) || !std::isfinite(pmax[k]))
        throw ArgumentError("maximum powers must be positive");
      if (levels[k] < 2) throw ArgumentError("each link needs at least 2 power levels");
      if (!(targets[k] >= 0.0) || !std::isfinite(targets[k]))
        throw ArgumentError("rate targets must be finite and non-negative");
    }
    if (!(delta > 0.0) || !std::isfinite(delta))
      throw ArgumentError("delta must be positive");
  }

  /// p_k^(1) = 0 < p_k^(2) < ... < p_k^(N_k) = p_k,max.
  std::vector<double> power_levels(PlayerIndex k) const {
    if (k > 1) throw ArgumentError("player index must be 0 or 1");
    const std::size_t n = levels[k];
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      if (grid == PowerGrid::linear) {
        p[i] = pmax[k] * static_cast<double>(i) / static_cast<double>(n - 1);
      } else {
        const double exponent =
            n == 2 ? 0.0
                   : -kLogGridDecades * static_cast<double>(n - 1 - i) /
                         static_cast<double>(n - 2);
        p[i] = pmax[k] * std::pow(10.0, exponent);
      }
    }
    p[n - 1] = pmax[k];
    return p;
  }

  double snr(PlayerIndex k) const { return pmax.at(k) / noise.at(k); }
};

/// log2(1 + p_k g_kk / (sigma_k^2 + p_-k g_k,-k)).
inline double shannon_rate(const Channel& ch, PlayerIndex k, double p_k, double p_minus) {
  if (k > 1) throw ArgumentError("player index must be 0 or 1");
  if (!(p_k >= 0.0) || !(p_minus >= 0.0))
    throw ArgumentError("transmit powers must be non-negative");
  if (p_k == 0.0) return 0.0;
  const PlayerIndex other = 1 - k;
  return std::log2(1.0 + p_k * ch.gains[k][k] /
                             (ch.noise[k] + p_minus * ch.gains[k][other]));
}

/// Rate of player k at a profile of level indices.
inline double profile_rate(const Channel& ch, const std::array<std::vector<double>, 2>& grid,
                           PlayerIndex k, std::span<const ActionIndex> a) {
  return shannon_rate(ch, k, grid[k][a[k]], grid[1 - k][a[1 - k]]);
}

inline std::array<std::vector<double>, 2> power_grids(const Channel& ch) {
  return {ch.power_levels(0), ch.power_levels(1)};
}

/// f_k(p_-k) = { p_k : rate_k >= target_k }.
inline SatisfactionGame build_satisfaction_game(const Channel& ch) {
  ch.validate();
  return SatisfactionGame(
      {ch.levels[0], ch.levels[1]},
      [ch, grid = power_grids(ch)](PlayerIndex k, std::span<const ActionIndex> a) {
        return profile_rate(ch, grid, k, a) >= ch.targets[k];
      });
}

/// c_k(p^(1)) = p_k,max + delta, c_k(p) = p otherwise.
inline CostProfile power_costs(const Channel& ch) {
  ch.validate();
  CostProfile costs;
  for (PlayerIndex k = 0; k < 2; ++k) {
    auto c = ch.power_levels(k);
    c[0] = ch.pmax[k] + ch.delta;
    costs.costs.push_back(std::move(c));
  }
  return costs;
}

struct ConstrainedScenario {
  /// Correspondences f'_k (falling back to {p^(1)} when f_k is empty) with the
  /// Shannon rates as utilities.
  ConstrainedGame game;
  CostProfile costs;
};

inline ConstrainedScenario build_constrained_game(const Channel& ch) {
  const SatisfactionGame base = build_satisfaction_game(ch);
  auto counts = ch.levels;
  SatisfactionGame fallback(
      {ch.levels[0], ch.levels[1]},
      [base, counts](PlayerIndex k, std::span<const ActionIndex> a) {
        ActionProfile b(a.begin(), a.end());
        for (ActionIndex alt = 0; alt < counts[k]; ++alt) {
          b[k] = alt;
          if (base.satisfied(k, b)) return base.satisfied(k, a);
        }
        return a[k] == 0;
      });
  UtilityFunction rate = [ch, grid = power_grids(ch)](PlayerIndex k,
                                                      std::span<const ActionIndex> a) {
    return profile_rate(ch, grid, k, a);
  };
  return {ConstrainedGame{std::move(fallback), std::move(rate)}, power_costs(ch)};
}

/// Every link can beat its target strictly under worst-case interference.
inline bool existence_condition(const Channel& ch) {
  ch.validate();
  for (PlayerIndex k = 0; k < 2; ++k) {
    bool feasible = false;
    for (double p : ch.power_levels(k))
      if (shannon_rate(ch, k, p, ch.pmax[1 - k]) > ch.targets[k]) feasible = true;
    if (!feasible) return false;
  }
  return true;
}

struct RatePoint {
  double u1 = 0.0;
  double u2 = 0.0;
  ActionProfile profile;
};

/// Rate pair of every profile, lexicographic order.
inline std::vector<RatePoint> rate_region_sweep(const Channel& ch,
                                                std::size_t cap = kDefaultProfileCap) {
  ch.validate();
  const ProfileSpace space({ch.levels[0], ch.levels[1]});
  space.require_within(cap, "rate_region_sweep");
  const auto grid = power_grids(ch);
  std::vector<RatePoint> out;
  out.reserve(space.size());
  space.for_each([&](std::size_t, const ActionProfile& a) {
    out.push_back({profile_rate(ch, grid, 0, a), profile_rate(ch, grid, 1, a), a});
  });
  return out;
}

struct SweepRow {
  std::size_t p1_index = 0;
  std::size_t p2_index = 0;
  double u1 = 0.0;
  double u2 = 0.0;
  bool is_se = false;
  bool is_ese = false;
  bool is_gne = false;
};

/// Rate region annotated with SE (of f), ESE (cost-minimal SE of f) and GNE
/// (of the rate-maximizing game on f').
inline std::vector<SweepRow> annotated_sweep(const Channel& ch,
                                             std::size_t cap = kDefaultProfileCap) {
  const auto points = rate_region_sweep(ch, cap);
  const SatisfactionGame game = build_satisfaction_game(ch).materialize(cap);
  const auto scenario = build_constrained_game(ch);
  const ConstrainedGame cg{scenario.game.base.materialize(cap), scenario.game.utility};
  const ProfileSpace& space = game.space();
  std::vector<std::uint8_t> ese(space.size(), 0), gne(space.size(), 0);
  for (const auto& a : enumerate_ese_bruteforce(game, scenario.costs, cap))
    ese[space.index_of(a)] = 1;
  for (const auto& a : enumerate_gne(cg, cap)) gne[space.index_of(a)] = 1;
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) {
    const std::size_t i = space.index_of(pt.profile);
    rows.push_back({pt.profile[0], pt.profile[1], pt.u1, pt.u2,
                    detail::all_satisfied(game, pt.profile), ese[i] != 0, gne[i] != 0});
  }
  return rows;
}

/// Channel with the gains replaced by independent unit-mean exponential draws
/// (Rayleigh fading power gains) from Rng(seed).
inline Channel draw_channel(std::uint64_t seed, Channel base) {
  Rng rng(seed);
  for (auto& row : base.gains)
    for (double& g : row) g = -std::log1p(-rng.uniform01());
  return base;
}

/// SNR_k = 10 dB (p_max = 10, sigma^2 = 1), targets 1.5 bits/s/Hz, 32 levels.
inline Channel reference_parameters() {
  Channel ch;
  ch.noise = {1.0, 1.0};
  ch.pmax = {10.0, 10.0};
  ch.levels = {32, 32};
  ch.targets = {1.5, 1.5};
  ch.delta = 0.1;
  return ch;
}

/// Shipped clipping-trap draw: link 2 has a clipping action that leaves link 1
/// unsatisfiable; several SE, one ESE, GNE (0, p_2,max).
inline Channel golden_channel() { return draw_channel(13, reference_parameters()); }

/// Shipped draw on which every link beats its target under worst-case
/// interference.
inline Channel feasible_channel() { return draw_channel(5, reference_parameters()); }

}  // namespace satgame::ic

#endif  // SATGAME_INTERFERENCE_HPP
