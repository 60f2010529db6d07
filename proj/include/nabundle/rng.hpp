#pragma once

// Deterministic seeded randomness.
//
// A RandomStream is a xoshiro256** generator whose state is derived from
// (master seed, stream label) through the SplitMix64 mixing function.
// Identical (seed, label) always reproduces the same draws; distinct labels
// give statistically independent streams. Streams are single-owner values:
// copy or fork them instead of sharing one across threads.

#include <array>
#include <cstdint>
#include <string_view>

namespace nabundle {

/// SplitMix64 finalizer. Stateless 64-bit mixer used for seed/label hashing.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t label = 0) {
    // Expand mix64(seed ^ mix64(label)) into the four state words.
    std::uint64_t x = mix64(seed ^ mix64(label));
    for (auto& w : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      w = z ^ (z >> 31);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro needs nonzero state
  }

  static constexpr std::string_view algorithm() {
    return "xoshiro256** seeded via splitmix64(seed, label)";
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0,1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, bound) via rejection sampling; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Derives an independent child stream; advances this stream by two draws.
  RandomStream fork() {
    const std::uint64_t seed = next();
    const std::uint64_t label = next();
    return RandomStream(seed, label);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace nabundle
