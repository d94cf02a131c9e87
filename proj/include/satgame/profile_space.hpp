#ifndef SATGAME_PROFILE_SPACE_HPP
#define SATGAME_PROFILE_SPACE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satgame/errors.hpp"

namespace satgame {

using PlayerIndex = std::size_t;
using ActionIndex = std::size_t;

/// One action index per player. Compares lexicographically.
using ActionProfile = std::vector<ActionIndex>;

inline constexpr std::size_t kDefaultProfileCap = 10'000'000;

/// The product set A_1 x ... x A_K with a row-major (player 0 most
/// significant) bijection onto [0, size()).
class ProfileSpace {
 public:
  ProfileSpace() = default;

  explicit ProfileSpace(std::vector<std::size_t> action_counts)
      : counts_(std::move(action_counts)), strides_(counts_.size(), 1) {
    if (counts_.empty()) throw ArgumentError("game needs at least one player");
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (counts_[k] == 0)
        throw ArgumentError("player " + std::to_string(k) +
                            " has an empty action set");
    }
    size_ = 1;
    for (std::size_t k = counts_.size(); k-- > 0;) {
      strides_[k] = size_;
      if (size_ > std::numeric_limits<std::size_t>::max() / counts_[k]) {
        size_ = std::numeric_limits<std::size_t>::max();
        overflow_ = true;
        break;
      }
      size_ *= counts_[k];
    }
  }

  std::size_t num_players() const noexcept { return counts_.size(); }
  std::span<const std::size_t> action_counts() const noexcept { return counts_; }
  std::size_t action_count(PlayerIndex k) const { return counts_.at(k); }

  /// Number of profiles; saturates at SIZE_MAX.
  std::size_t size() const noexcept { return size_; }

  void require_within(std::size_t cap, std::string_view what) const {
    if (overflow_ || size_ > cap)
      throw CapacityError(std::string(what) + ": profile space of " +
                              (overflow_ ? std::string("overflowing size")
                                         : std::to_string(size_)),
                          cap);
  }

  void validate_player(PlayerIndex k) const {
    if (k >= counts_.size())
      throw ArgumentError("player index " + std::to_string(k) +
                          " out of range [0, " +
                          std::to_string(counts_.size()) + ")");
  }

  void validate(std::span<const ActionIndex> a) const {
    if (a.size() != counts_.size())
      throw ArgumentError("profile has " + std::to_string(a.size()) +
                          " entries, game has " +
                          std::to_string(counts_.size()) + " players");
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] >= counts_[k])
        throw ArgumentError("action " + std::to_string(a[k]) +
                            " of player " + std::to_string(k) +
                            " out of range [0, " +
                            std::to_string(counts_[k]) + ")");
    }
  }

  std::size_t index_of(std::span<const ActionIndex> a) const noexcept {
    std::size_t index = 0;
    for (std::size_t k = 0; k < a.size(); ++k) index += a[k] * strides_[k];
    return index;
  }

  ActionProfile profile_at(std::size_t index) const {
    ActionProfile a(counts_.size());
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      a[k] = index / strides_[k];
      index %= strides_[k];
    }
    return a;
  }

  /// Stride of player k in the linear index.
  std::size_t stride(PlayerIndex k) const { return strides_.at(k); }

  /// Advances `a` to its lexicographic successor; false after the last one.
  bool next(ActionProfile& a) const noexcept {
    for (std::size_t k = a.size(); k-- > 0;) {
      if (++a[k] < counts_[k]) return true;
      a[k] = 0;
    }
    return false;
  }

  /// Visits every profile in lexicographic order as f(index, profile).
  template <class F>
  void for_each(F&& f) const {
    ActionProfile a(counts_.size(), 0);
    std::size_t index = 0;
    do {
      f(index++, static_cast<const ActionProfile&>(a));
    } while (next(a));
  }

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  bool overflow_ = false;
};

}  // namespace satgame

#endif  // SATGAME_PROFILE_SPACE_HPP
