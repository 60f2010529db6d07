#include "nabundle/state.hpp"

#include <bit>
#include <stdexcept>

namespace nabundle {

void SpaceParams::validate() const {
  if (n_dims < 1) throw std::invalid_argument("n_dims must be >= 1");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q must lie in (0,1)");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0,1]");
}

std::vector<std::string> SpaceParams::range_warnings() const {
  std::vector<std::string> out;
  if (!(p > 0.0 && p <= 0.5))
    out.push_back("p=" + std::to_string(p) +
                  " is outside the preferred range (0, 0.5]");
  if (!(q > 0.0 && q <= 0.5))
    out.push_back("q=" + std::to_string(q) +
                  " is outside the preferred range (0, 0.5]");
  return out;
}

namespace {

std::size_t count_ones(const std::vector<std::uint64_t>& words) {
  std::size_t n = 0;
  for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace

State::State(std::vector<std::uint64_t> words, std::size_t n_dims)
    : words_(std::move(words)), n_dims_(n_dims), pop_(count_ones(words_)) {}

State State::zeros(std::size_t n_dims) {
  if (n_dims < 1) throw std::invalid_argument("n_dims must be >= 1");
  return State(std::vector<std::uint64_t>(words_for(n_dims), 0), n_dims);
}

State State::ones(std::size_t n_dims) {
  if (n_dims < 1) throw std::invalid_argument("n_dims must be >= 1");
  std::vector<std::uint64_t> w(words_for(n_dims), ~0ULL);
  const std::size_t tail = n_dims % kWordBits;
  if (tail != 0) w.back() = (~0ULL) >> (kWordBits - tail);
  return State(std::move(w), n_dims);
}

State State::from_bit_string(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("empty bit string");
  std::vector<std::uint64_t> w(words_for(bits.size()), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      w[i / kWordBits] |= 1ULL << (i % kWordBits);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
  return State(std::move(w), bits.size());
}

State State::from_words(std::vector<std::uint64_t> words, std::size_t n_dims) {
  if (n_dims < 1) throw std::invalid_argument("n_dims must be >= 1");
  if (words.size() != words_for(n_dims))
    throw std::invalid_argument("word count does not match n_dims");
  const std::size_t tail = n_dims % kWordBits;
  if (tail != 0) words.back() &= (~0ULL) >> (kWordBits - tail);
  return State(std::move(words), n_dims);
}

bool State::bit(std::size_t i) const {
  if (i >= n_dims_) throw std::out_of_range("bit index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1ULL;
}

State State::complement() const {
  std::vector<std::uint64_t> w(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) w[i] = ~words_[i];
  return from_words(std::move(w), n_dims_);
}

std::string State::to_bit_string() const {
  std::string s(n_dims_, '0');
  for (std::size_t i = 0; i < n_dims_; ++i)
    if ((words_[i / kWordBits] >> (i % kWordBits)) & 1ULL) s[i] = '1';
  return s;
}

}  // namespace nabundle
