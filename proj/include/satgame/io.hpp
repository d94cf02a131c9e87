#ifndef SATGAME_IO_HPP
#define SATGAME_IO_HPP

// JSON documents for games, mixed profiles and channel scenarios, plus
// locale-independent number formatting for CSV output.

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "satgame/errors.hpp"
#include "satgame/ese.hpp"
#include "satgame/game.hpp"
#include "satgame/interference.hpp"
#include "satgame/mixed.hpp"

namespace satgame::io {

using nlohmann::json;

/// Shortest round-trip decimal form, '.' separator regardless of locale.
inline std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), end);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

namespace detail {

inline const json& require(const json& doc, const char* field) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  const auto it = doc.find(field);
  if (it == doc.end()) throw ParseError("missing field '" + std::string(field) + "'");
  return *it;
}

inline double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

inline std::size_t count_at(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ParseError(where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline std::vector<std::vector<double>> matrix_at(const json& v, const std::string& where,
                                                  std::size_t rows) {
  if (!v.is_array() || v.size() != rows)
    throw ParseError(where + ": expected an array of " + std::to_string(rows) + " arrays");
  std::vector<std::vector<double>> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!v[r].is_array()) throw ParseError(at + ": expected an array");
    for (std::size_t i = 0; i < v[r].size(); ++i)
      out[r].push_back(number_at(v[r][i], at + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <std::size_t N>
std::array<double, N> pair_at(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_array() || v.size() != N)
    throw ParseError(std::string(field) + ": expected " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = number_at(v[i], std::string(field) + "[" + std::to_string(i) + "]");
  return out;
}

}  // namespace detail

/// Explicit game plus optional per-player costs and utility tables.
struct GameDocument {
  SatisfactionGame game;
  std::optional<CostProfile> costs;
  /// utilities[k][profile index], same layout as the satisfaction table.
  std::optional<std::vector<std::vector<double>>> utilities;

  /// Utilities from the table, or the constant 0 when absent.
  UtilityFunction utility() const {
    if (!utilities) return [](PlayerIndex, std::span<const ActionIndex>) { return 0.0; };
    return [table = *utilities, space = game.space()](PlayerIndex k,
                                                      std::span<const ActionIndex> a) {
      return table[k][space.index_of(a)];
    };
  }
};

/// {"players":K, "actions":[N_1..N_K], "satisfaction":[[...], ...]} with one
/// 0/1 row per player over all profiles in row-major order.
inline json game_to_json(const SatisfactionGame& game) {
  const auto table = game.table();
  const std::size_t size = game.space().size();
  json sat = json::array();
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    json row = json::array();
    for (std::size_t i = 0; i < size; ++i) row.push_back(static_cast<int>(table[k * size + i]));
    sat.push_back(std::move(row));
  }
  return json{{"players", game.num_players()},
              {"actions", std::vector<std::size_t>(game.action_counts().begin(),
                                                   game.action_counts().end())},
              {"satisfaction", std::move(sat)}};
}

inline GameDocument game_from_json(const json& doc) {
  const std::size_t K = detail::count_at(detail::require(doc, "players"), "players");
  const json& actions = detail::require(doc, "actions");
  if (!actions.is_array() || actions.size() != K)
    throw ParseError("actions: expected " + std::to_string(K) + " action counts");
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < K; ++k)
    counts.push_back(detail::count_at(actions[k], "actions[" + std::to_string(k) + "]"));
  ProfileSpace space;
  try {
    space = ProfileSpace(counts);
    space.require_within(kDefaultProfileCap, "game document");
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("actions: ") + e.what());
  }
  const json& sat = detail::require(doc, "satisfaction");
  if (!sat.is_array() || sat.size() != K)
    throw ParseError("satisfaction: expected " + std::to_string(K) + " rows");
  std::vector<std::uint8_t> table;
  table.reserve(K * space.size());
  for (std::size_t k = 0; k < K; ++k) {
    const std::string at = "satisfaction[" + std::to_string(k) + "]";
    if (!sat[k].is_array() || sat[k].size() != space.size())
      throw ParseError(at + ": expected " + std::to_string(space.size()) + " entries");
    for (std::size_t i = 0; i < space.size(); ++i) {
      const json& v = sat[k][i];
      if (v.is_boolean()) table.push_back(v.get<bool>() ? 1 : 0);
      else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1))
        table.push_back(static_cast<std::uint8_t>(v.get<int>()));
      else throw ParseError(at + "[" + std::to_string(i) + "]: expected 0 or 1");
    }
  }
  GameDocument out{SatisfactionGame::from_table(std::move(counts), std::move(table)), {}, {}};
  if (doc.contains("costs")) {
    CostProfile c{detail::matrix_at(doc["costs"], "costs", K)};
    try {
      validate(out.game, c);
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("costs: ") + e.what());
    }
    out.costs = std::move(c);
  }
  if (doc.contains("utilities")) {
    auto u = detail::matrix_at(doc["utilities"], "utilities", K);
    for (std::size_t k = 0; k < K; ++k)
      if (u[k].size() != out.game.space().size())
        throw ParseError("utilities[" + std::to_string(k) + "]: expected " +
                         std::to_string(out.game.space().size()) + " entries");
    out.utilities = std::move(u);
  }
  return out;
}

inline json mixed_to_json(const MixedProfile& pi) {
  return json{{"distributions", pi.distributions}};
}

inline MixedProfile mixed_from_json(const json& doc) {
  const json& d = detail::require(doc, "distributions");
  if (!d.is_array()) throw ParseError("distributions: expected an array");
  return MixedProfile{detail::matrix_at(d, "distributions", d.size())};
}

/// {"gains":[[g11,g12],[g21,g22]], "noise":[..], "pmax":[..], "levels":[..],
///  "targets":[..], "delta":d, "grid":"linear"}. delta defaults to
/// 0.01 * max(pmax), grid to linear.
inline ic::Channel channel_from_json(const json& doc) {
  ic::Channel ch;
  const json& gains = detail::require(doc, "gains");
  const auto g = detail::matrix_at(gains, "gains", 2);
  for (std::size_t j = 0; j < 2; ++j) {
    if (g[j].size() != 2)
      throw ParseError("gains[" + std::to_string(j) + "]: expected 2 numbers");
    ch.gains[j] = {g[j][0], g[j][1]};
  }
  ch.noise = detail::pair_at<2>(doc, "noise");
  ch.pmax = detail::pair_at<2>(doc, "pmax");
  ch.targets = detail::pair_at<2>(doc, "targets");
  const json& levels = detail::require(doc, "levels");
  if (!levels.is_array() || levels.size() != 2)
    throw ParseError("levels: expected 2 integers");
  for (std::size_t k = 0; k < 2; ++k)
    ch.levels[k] = detail::count_at(levels[k], "levels[" + std::to_string(k) + "]");
  ch.delta = doc.contains("delta") ? detail::number_at(doc["delta"], "delta")
                                   : 0.01 * std::max(ch.pmax[0], ch.pmax[1]);
  if (doc.contains("grid")) {
    if (!doc["grid"].is_string()) throw ParseError("grid: expected a string");
    try {
      ch.grid = ic::parse_grid(doc["grid"].get<std::string>());
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("grid: ") + e.what());
    }
  }
  try {
    ch.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return ch;
}

inline json channel_to_json(const ic::Channel& ch) {
  return json{{"gains", {{ch.gains[0][0], ch.gains[0][1]}, {ch.gains[1][0], ch.gains[1][1]}}},
              {"noise", ch.noise},
              {"pmax", ch.pmax},
              {"levels", ch.levels},
              {"targets", ch.targets},
              {"delta", ch.delta},
              {"grid", std::string(ic::to_string(ch.grid))}};
}

inline json profiles_to_json(const std::vector<ActionProfile>& profiles) {
  json out = json::array();
  for (const auto& a : profiles) out.push_back(a);
  return out;
}

}  // namespace satgame::io

#endif  // SATGAME_IO_HPP
