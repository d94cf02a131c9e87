#ifndef SATGAME_TESTS_SUPPORT_HPP
#define SATGAME_TESTS_SUPPORT_HPP

// Test-side generators and independent brute-force oracles. Oracles decode
// profile indices with their own div/mod arithmetic and never call the
// library's enumerators.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "satgame/satgame.hpp"

namespace satgame::testing {

#ifndef SATGAME_DATA_DIR
#define SATGAME_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) {
  return std::string(SATGAME_DATA_DIR) + "/" + name;
}

/// Player 1 (rows) satisfied at (0,1) and (1,0); player 2 only at (0,1).
inline SatisfactionGame single_se_game() {
  return SatisfactionGame::from_table({2, 2}, {0, 1, 1, 0,  //
                                               0, 1, 0, 0});
}

/// One satisfying profile per player, different profiles, no pure SE.
inline SatisfactionGame worst_case_2x2() {
  return SatisfactionGame::from_table({2, 2}, {1, 0, 0, 0,  //
                                               0, 0, 0, 1});
}

/// Independent decoder: player 0 most significant.
inline std::vector<std::size_t> decode(std::size_t index,
                                       const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> a(counts.size());
  for (std::size_t k = counts.size(); k-- > 0;) {
    a[k] = index % counts[k];
    index /= counts[k];
  }
  return a;
}

inline std::size_t encode(const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& counts) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) index = index * counts[k] + a[k];
  return index;
}

inline std::size_t product(const std::vector<std::size_t>& counts) {
  std::size_t n = 1;
  for (auto c : counts) n *= c;
  return n;
}

/// Explicit random game: tables[k][index] with density p of ones.
struct RandomGame {
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::uint8_t>> sat;      // [k][index]
  std::vector<std::vector<double>> utility;        // [k][index]
  std::vector<std::vector<double>> costs;          // [k][action]

  SatisfactionGame game() const {
    std::vector<std::uint8_t> flat;
    for (const auto& row : sat) flat.insert(flat.end(), row.begin(), row.end());
    return SatisfactionGame::from_table(counts, flat);
  }
  ConstrainedGame constrained() const {
    auto u = utility;
    auto c = counts;
    return {game(), [u, c](PlayerIndex k, std::span<const ActionIndex> a) {
              return u[k][encode({a.begin(), a.end()}, c)];
            }};
  }
  CostProfile cost_profile() const { return {costs}; }
  std::size_t size() const { return product(counts); }
  bool sat_at(std::size_t k, const std::vector<std::size_t>& a) const {
    return sat[k][encode(a, counts)] != 0;
  }
};

struct GameGenerator {
  std::mt19937_64 rng;
  explicit GameGenerator(std::uint64_t seed) : rng(seed) {}

  std::size_t uniform_int(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  double uniform_real() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  /// K in [1,max_players], N_k in [1,max_actions], each bit 1 with prob density
  /// (density drawn per game when negative).
  RandomGame game(std::size_t max_players, std::size_t max_actions, double density = -1.0) {
    std::vector<std::size_t> counts(uniform_int(1, max_players));
    for (auto& n : counts) n = uniform_int(1, max_actions);
    return shaped(std::move(counts), density);
  }

  RandomGame shaped(std::vector<std::size_t> counts, double density = -1.0) {
    RandomGame g;
    g.counts = std::move(counts);
    const std::size_t K = g.counts.size();
    const double p = density < 0.0 ? 0.2 + 0.7 * uniform_real() : density;
    const std::size_t size = g.size();
    g.sat.assign(K, std::vector<std::uint8_t>(size, 0));
    g.utility.assign(K, std::vector<double>(size, 0.0));
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t i = 0; i < size; ++i) {
        g.sat[k][i] = uniform_real() < p ? 1 : 0;
        // few distinct values so utility ties occur
        g.utility[k][i] = static_cast<double>(uniform_int(0, 4));
      }
    g.costs.assign(K, {});
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t i = 0; i < g.counts[k]; ++i) g.costs[k].push_back(uniform_real());
    return g;
  }

  /// Forces every f_k(a_-k) non-empty by switching on one random action in
  /// each empty fiber.
  void make_nonempty(RandomGame& g) {
    const std::size_t size = g.size();
    for (std::size_t k = 0; k < g.counts.size(); ++k)
      for (std::size_t i = 0; i < size; ++i) {
        auto a = decode(i, g.counts);
        if (a[k] != 0) continue;  // visit each fiber once, from its first member
        bool any = false;
        for (std::size_t x = 0; x < g.counts[k]; ++x) {
          a[k] = x;
          any = any || g.sat_at(k, a);
        }
        if (!any) {
          a[k] = uniform_int(0, g.counts[k] - 1);
          g.sat[k][encode(a, g.counts)] = 1;
        }
      }
  }
};

// ---- oracles --------------------------------------------------------------

inline std::vector<ActionProfile> oracle_se(const RandomGame& g) {
  std::vector<ActionProfile> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < g.counts.size(); ++k) all = all && g.sat[k][i];
    if (all) out.push_back(decode(i, g.counts));
  }
  return out;
}

/// Pure NE of the binary-utility game: no player gains 1 by deviating.
inline std::vector<ActionProfile> oracle_ne_binary(const RandomGame& g) {
  std::vector<ActionProfile> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto a = decode(i, g.counts);
    bool ne = true;
    for (std::size_t k = 0; k < g.counts.size() && ne; ++k) {
      auto b = a;
      for (std::size_t x = 0; x < g.counts[k]; ++x) {
        b[k] = x;
        if (g.sat_at(k, b) > g.sat_at(k, a)) ne = false;
      }
    }
    if (ne) out.push_back(a);
  }
  return out;
}

inline std::vector<ActionProfile> oracle_gne(const RandomGame& g) {
  std::vector<ActionProfile> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto a = decode(i, g.counts);
    bool ok = true;
    for (std::size_t k = 0; k < g.counts.size() && ok; ++k) {
      if (!g.sat_at(k, a)) ok = false;
      auto b = a;
      for (std::size_t x = 0; x < g.counts[k] && ok; ++x) {
        b[k] = x;
        if (g.sat_at(k, b) && g.utility[k][encode(b, g.counts)] > g.utility[k][i]) ok = false;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

inline std::vector<ActionProfile> oracle_ese(const RandomGame& g) {
  std::vector<ActionProfile> out;
  for (const auto& a : oracle_se(g)) {
    bool ok = true;
    for (std::size_t k = 0; k < g.counts.size() && ok; ++k) {
      auto b = a;
      for (std::size_t x = 0; x < g.counts[k]; ++x) {
        b[k] = x;
        if (g.sat_at(k, b) && g.costs[k][x] < g.costs[k][a[k]]) ok = false;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

/// Joint-probability sum written as a plain loop over indices.
inline double oracle_probability(const RandomGame& g, const MixedProfile& pi, std::size_t k) {
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.sat[k][i]) continue;
    const auto a = decode(i, g.counts);
    double w = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) w *= pi.distributions[j][a[j]];
    total += w;
  }
  return total;
}

inline MixedProfile random_mixed(GameGenerator& gen, const std::vector<std::size_t>& counts,
                                 double zero_chance = 0.3) {
  MixedProfile pi;
  for (auto n : counts) {
    std::vector<double> d(n);
    double s = 0.0;
    for (auto& x : d) {
      x = gen.uniform_real() < zero_chance ? 0.0 : gen.uniform_real() + 0.01;
      s += x;
    }
    if (s == 0.0) {
      d[gen.uniform_int(0, n - 1)] = 1.0;
      s = 1.0;
    }
    for (auto& x : d) x /= s;
    pi.distributions.push_back(std::move(d));
  }
  return pi;
}

}  // namespace satgame::testing

#endif  // SATGAME_TESTS_SUPPORT_HPP
