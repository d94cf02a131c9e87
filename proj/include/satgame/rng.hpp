#ifndef SATGAME_RNG_HPP
#define SATGAME_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace satgame {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial t in a batch seeded with `seed`.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) noexcept {
  return splitmix64(seed + (t + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Portable random stream: std::mt19937_64 (bit-exact by the standard) with
/// hand-written conversions, since the standard distributions are
/// implementation-defined. Every draw consumes exactly one 64-bit word.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Index i with probability weights[i] (weights sum to 1). Zero-weight
  /// entries are never returned.
  std::size_t categorical(std::span<const double> weights) {
    const double u = uniform01();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = i;
      cumulative += weights[i];
      if (u < cumulative) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace satgame

#endif  // SATGAME_RNG_HPP
