#include "nabundle/ops.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nabundle/theory.hpp"

namespace nabundle {

namespace {

void require_same_dims(const State& x, const State& y) {
  if (x.dims() != y.dims())
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(x.dims()) + " vs " +
                                std::to_string(y.dims()));
}

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

State random_state(std::size_t n_dims, double q, RandomStream& stream) {
  if (n_dims < 1) throw std::invalid_argument("n_dims must be >= 1");
  require_probability(q, "q");
  const std::size_t nw = State::words_for(n_dims);
  std::vector<std::uint64_t> w(nw, 0);
  if (q == 0.5) {
    // Raw generator words are exactly Bernoulli(1/2) per bit.
    for (auto& word : w) word = stream.next();
  } else {
    for (std::size_t i = 0; i < n_dims; ++i)
      if (stream.next_double() < q) w[i / 64] |= 1ULL << (i % 64);
  }
  return State::from_words(std::move(w), n_dims);
}

State random_state(const SpaceParams& params, RandomStream& stream) {
  params.validate();
  return random_state(params.n_dims, params.q, stream);
}

State similar_state(const State& x, double delta, SimilarMode mode,
                    RandomStream& stream) {
  require_probability(delta, "delta");
  const std::size_t n = x.dims();
  if (mode == SimilarMode::flip) {
    if (delta == 0.0) return x;
    const State mask = random_state(n, delta, stream);
    std::vector<std::uint64_t> w(x.words().begin(), x.words().end());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= mask.words()[i];
    return State::from_words(std::move(w), n);
  }

  // swap: toggle exactly s one-bits and s zero-bits.
  const std::size_t s =
      static_cast<std::size_t>(std::llround(delta * static_cast<double>(n) / 2.0));
  const std::size_t n_ones = x.popcount();
  const std::size_t bound = std::min(n_ones, n - n_ones);
  if (s > bound)
    throw std::invalid_argument(
        "swap count " + std::to_string(s) +
        " exceeds feasible bound min(|x|, N-|x|) = " + std::to_string(bound));
  if (s == 0) return x;

  std::vector<std::size_t> ones, zeros;
  ones.reserve(n_ones);
  zeros.reserve(n - n_ones);
  for (std::size_t i = 0; i < n; ++i) (x.bit(i) ? ones : zeros).push_back(i);

  // Partial Fisher-Yates: the first s entries become the sampled indices.
  auto pick = [&](std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = i + stream.next_below(idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
  };
  pick(ones);
  pick(zeros);

  std::vector<std::uint64_t> w(x.words().begin(), x.words().end());
  for (std::size_t i = 0; i < s; ++i) {
    w[ones[i] / 64] ^= 1ULL << (ones[i] % 64);
    w[zeros[i] / 64] ^= 1ULL << (zeros[i] % 64);
  }
  return State::from_words(std::move(w), n);
}

State bind(const State& x, const State& y) {
  require_same_dims(x, y);
  const auto xw = x.words();
  const auto yw = y.words();
  std::vector<std::uint64_t> w(xw.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ~(xw[i] ^ yw[i]);
  return State::from_words(std::move(w), x.dims());
}

State bundle(const State& x, const State& y, double p, RandomStream& stream) {
  require_same_dims(x, y);
  require_probability(p, "p");
  const auto xw = x.words();
  const auto yw = y.words();
  std::vector<std::uint64_t> w(xw.size());

  if (p == 0.0) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = xw[i] & yw[i];
    return State::from_words(std::move(w), x.dims());
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = xw[i] | yw[i];
    return State::from_words(std::move(w), x.dims());
  }

  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint64_t agree = ~(xw[i] ^ yw[i]);
    std::uint64_t out = xw[i] & agree;
    std::uint64_t disagree = xw[i] ^ yw[i];
    while (disagree != 0) {
      const int b = std::countr_zero(disagree);
      disagree &= disagree - 1;
      if (stream.bernoulli(p)) out |= 1ULL << b;
    }
    w[i] = out;
  }
  return State::from_words(std::move(w), x.dims());
}

std::size_t hamming_raw(const State& x, const State& y) {
  require_same_dims(x, y);
  const auto xw = x.words();
  const auto yw = y.words();
  std::size_t n = 0;
  for (std::size_t i = 0; i < xw.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(xw[i] ^ yw[i]));
  return n;
}

double hamming(const State& x, const State& y) {
  return static_cast<double>(hamming_raw(x, y)) /
         static_cast<double>(x.dims());
}

double jaccard(const State& x, const State& y) {
  require_same_dims(x, y);
  const auto xw = x.words();
  const auto yw = y.words();
  std::size_t n_and = 0, n_or = 0;
  for (std::size_t i = 0; i < xw.size(); ++i) {
    n_and += static_cast<std::size_t>(std::popcount(xw[i] & yw[i]));
    n_or += static_cast<std::size_t>(std::popcount(xw[i] | yw[i]));
  }
  if (n_or == 0) return 0.0;  // both all-zero
  return 1.0 - static_cast<double>(n_and) / static_cast<double>(n_or);
}

double global_distance(const State& x, const State& y, double ref_q) {
  require_same_dims(x, y);
  if (!(ref_q > 0.0 && ref_q < 1.0))
    throw std::invalid_argument("ref_q must lie in (0,1)");
  const auto n = static_cast<std::int64_t>(x.dims());
  const auto k = static_cast<std::int64_t>(hamming_raw(x, y));
  return theory::binomial_cdf(k, n, 2.0 * ref_q * (1.0 - ref_q));
}

bool approx_equal(const State& x, const State& y, double ref_q,
                  double epsilon) {
  require_probability(epsilon, "epsilon");
  return global_distance(x, y, ref_q) <= epsilon;
}

double activity(const State& x) { return x.activity(); }

}  // namespace nabundle
