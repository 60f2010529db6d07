#pragma once

// Bit-packed binary state space.
//
// A State is an immutable vector of n_dims bits stored in 64-bit words,
// little-endian bit order within a word (bit i lives in word i/64 at
// position i%64). Trailing bits of the last word are always zero, so
// word-wise popcounts and boolean kernels never need masking.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nabundle {

/// Parameters governing every stochastic operation on the space:
/// dimension N, mean activity q of fresh states, bundling noise p, and the
/// master seed all randomness derives from.
struct SpaceParams {
  std::size_t n_dims = 10000;
  double q = 0.5;
  double p = 0.5;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless n_dims >= 1, 0 < q < 1, 0 <= p <= 1.
  void validate() const;

  /// Non-fatal: messages for p or q outside the preferred range (0, 1/2].
  std::vector<std::string> range_warnings() const;
};

class State {
 public:
  static constexpr std::size_t kWordBits = 64;

  static std::size_t words_for(std::size_t n_dims) {
    return (n_dims + kWordBits - 1) / kWordBits;
  }

  static State zeros(std::size_t n_dims);
  static State ones(std::size_t n_dims);

  /// Parses a string of '0'/'1'; the leftmost character is bit 0.
  static State from_bit_string(std::string_view bits);

  /// Takes ownership of packed words; bits at or past n_dims are cleared.
  static State from_words(std::vector<std::uint64_t> words, std::size_t n_dims);

  std::size_t dims() const { return n_dims_; }
  std::size_t popcount() const { return pop_; }
  double activity() const {
    return static_cast<double>(pop_) / static_cast<double>(n_dims_);
  }
  bool bit(std::size_t i) const;
  std::span<const std::uint64_t> words() const { return words_; }

  State complement() const;
  std::string to_bit_string() const;

  friend bool operator==(const State& a, const State& b) {
    return a.n_dims_ == b.n_dims_ && a.words_ == b.words_;
  }

 private:
  State(std::vector<std::uint64_t> words, std::size_t n_dims);

  std::vector<std::uint64_t> words_;
  std::size_t n_dims_ = 0;
  std::size_t pop_ = 0;
};

}  // namespace nabundle
