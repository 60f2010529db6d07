#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// State representation, seeded randomness, and the operator/distance layer.
// Stochastic checks use fixed seeds and 4-sigma bands, so they are
// deterministic and comfortably non-flaky.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nabundle/ops.hpp"
#include "nabundle/rng.hpp"
#include "nabundle/state.hpp"
#include "oracle.hpp"

using namespace nabundle;

namespace {

double binomial_sigma(double prob, std::size_t n) {
  return std::sqrt(prob * (1.0 - prob) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("words_for rounds up to whole 64-bit words") {
  CHECK(State::words_for(1) == 1);
  CHECK(State::words_for(64) == 1);
  CHECK(State::words_for(65) == 2);
  CHECK(State::words_for(128) == 2);
  CHECK(State::words_for(10000) == 157);
}

TEST_CASE("zeros and ones mask the tail of the last word") {
  const State z = State::zeros(70);
  CHECK(z.dims() == 70);
  CHECK(z.popcount() == 0);
  CHECK(z.activity() == 0.0);

  const State o = State::ones(70);
  CHECK(o.popcount() == 70);
  CHECK(o.activity() == 1.0);
  REQUIRE(o.words().size() == 2);
  CHECK(o.words()[0] == ~0ULL);
  CHECK(o.words()[1] == 0x3FULL);  // only 6 live bits in the second word
  for (std::size_t i = 0; i < 70; ++i) {
    CHECK(o.bit(i));
    CHECK_FALSE(z.bit(i));
  }
}

TEST_CASE("from_bit_string maps the leftmost character to bit 0") {
  const State s = State::from_bit_string("0110");
  CHECK(s.dims() == 4);
  CHECK_FALSE(s.bit(0));
  CHECK(s.bit(1));
  CHECK(s.bit(2));
  CHECK_FALSE(s.bit(3));
  CHECK(s.popcount() == 2);
  CHECK(s.to_bit_string() == "0110");

  CHECK_THROWS_AS(State::from_bit_string(""), std::invalid_argument);
  CHECK_THROWS_AS(State::from_bit_string("01x0"), std::invalid_argument);
}

TEST_CASE("from_words clears bits past n_dims") {
  const State s = State::from_words({~0ULL}, 3);
  CHECK(s.popcount() == 3);
  CHECK(s.words()[0] == 0x7ULL);
  CHECK_THROWS_AS(State::from_words({1, 2}, 64), std::invalid_argument);
}

TEST_CASE("complement is an involution") {
  RandomStream stream(11);
  const State x = random_state(300, 0.4, stream);
  const State c = x.complement();
  CHECK(c.popcount() == 300 - x.popcount());
  CHECK(c.complement() == x);
  CHECK_FALSE(c == x);
}

TEST_CASE("bit access past the end throws") {
  const State s = State::zeros(10);
  CHECK_THROWS_AS(s.bit(10), std::out_of_range);
}

TEST_CASE("SpaceParams validation and range warnings") {
  SpaceParams params;
  CHECK_NOTHROW(params.validate());
  CHECK(params.range_warnings().empty());

  SpaceParams bad = params;
  bad.n_dims = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = params;
  bad.q = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = params;
  bad.q = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = params;
  bad.p = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = params;
  bad.p = 1.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // The boundaries p=0 and p=1 are legal, merely outside the preferred range.
  SpaceParams boundary = params;
  boundary.p = 1.0;
  CHECK_NOTHROW(boundary.validate());
  CHECK_FALSE(boundary.range_warnings().empty());
  SpaceParams high_q = params;
  high_q.q = 0.7;
  CHECK_NOTHROW(high_q.validate());
  CHECK_FALSE(high_q.range_warnings().empty());
}

TEST_CASE("mix64 matches the SplitMix64 reference sequence") {
  // First output of splitmix64 with state 0; pins the mixing constants.
  CHECK(mix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("RandomStream is reproducible and label-sensitive") {
  RandomStream a(123, 7), b(123, 7), c(123, 8), d(124, 7);
  bool all_equal = true, c_differs = false, d_differs = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next();
    all_equal = all_equal && va == b.next();
    c_differs = c_differs || va != c.next();
    d_differs = d_differs || va != d.next();
  }
  CHECK(all_equal);
  CHECK(c_differs);
  CHECK(d_differs);
  CHECK(RandomStream::algorithm().find("xoshiro256**") != std::string_view::npos);
}

TEST_CASE("next_double, bernoulli, next_below behave") {
  RandomStream stream(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = stream.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 200; ++i) {
    CHECK_FALSE(stream.bernoulli(0.0));
    CHECK(stream.bernoulli(1.0));
  }
  CHECK(stream.next_below(1) == 0);
  std::vector<int> seen(6, 0);
  for (int i = 0; i < 1000; ++i) ++seen[stream.next_below(6)];
  for (int count : seen) CHECK(count > 0);
}

TEST_CASE("fork advances the parent by exactly two draws") {
  RandomStream parent(99), replica(99);
  RandomStream child = parent.fork();
  replica.next();
  replica.next();
  CHECK(parent.next() == replica.next());
  // Child stream decorrelates from the parent.
  RandomStream parent2(99);
  RandomStream child2 = parent2.fork();
  bool differs = false;
  for (int i = 0; i < 16; ++i) differs = differs || child.next() != parent.next();
  CHECK(differs);
  // Same parent state -> same child.
  CHECK(child2.next() == RandomStream(99).fork().next());
}

TEST_CASE("random_state hits the target activity and is reproducible") {
  RandomStream s1(42), s2(42);
  const State x = random_state(10000, 0.3, s1);
  const State y = random_state(10000, 0.3, s2);
  CHECK(x == y);
  CHECK(std::fabs(x.activity() - 0.3) <= 4.0 * binomial_sigma(0.3, 10000));

  const State z = random_state(10000, 0.3, s1);
  CHECK_FALSE(x == z);

  SpaceParams params;
  params.n_dims = 512;
  params.q = 0.25;
  RandomStream s3(42), s4(42);
  CHECK(random_state(params, s3) == random_state(512, 0.25, s4));
}

TEST_CASE("similar_state flip matches the requested distance in expectation") {
  RandomStream stream(7);
  const State x = random_state(10000, 0.5, stream);
  CHECK(similar_state(x, 0.0, SimilarMode::flip, stream) == x);
  CHECK(similar_state(x, 1.0, SimilarMode::flip, stream) == x.complement());
  const State near = similar_state(x, 0.1, SimilarMode::flip, stream);
  CHECK(std::fabs(hamming(x, near) - 0.1) <= 4.0 * binomial_sigma(0.1, 10000));
}

TEST_CASE("similar_state swap preserves activity and fixes the distance") {
  RandomStream stream(8);
  const State x = random_state(1000, 0.5, stream);
  const State y = similar_state(x, 0.1, SimilarMode::swap, stream);
  CHECK(y.popcount() == x.popcount());
  CHECK(hamming_raw(x, y) == 100);  // 2 * round(0.1 * 1000 / 2)

  const State sparse = State::from_bit_string("0000000000");
  CHECK_THROWS_WITH_AS(similar_state(sparse, 1.0, SimilarMode::swap, stream),
                       doctest::Contains("swap count"), std::invalid_argument);
  CHECK_THROWS_AS(similar_state(x, 1.5, SimilarMode::flip, stream),
                  std::invalid_argument);
}

TEST_CASE("bind is XNOR with the expected identities") {
  const State a = State::from_bit_string("0110");
  const State b = State::from_bit_string("0101");
  CHECK(bind(a, b).to_bit_string() == "1100");

  RandomStream stream(3);
  const State x = random_state(512, 0.5, stream);
  const State y = random_state(512, 0.5, stream);
  CHECK(bind(x, y) == bind(y, x));
  CHECK(bind(x, x) == State::ones(512));
  CHECK(bind(x, State::ones(512)) == x);
  CHECK(bind(x, State::zeros(512)) == x.complement());
  CHECK(bind(bind(x, y), y) == x);  // self-inverse
  CHECK_THROWS_WITH_AS(bind(x, a), doctest::Contains("dimension mismatch"),
                       std::invalid_argument);
}

TEST_CASE("bundle boundaries are AND and OR") {
  const State a = State::from_bit_string("0110");
  const State b = State::from_bit_string("0101");
  RandomStream stream(1);
  CHECK(bundle(a, b, 0.0, stream).to_bit_string() == "0100");
  CHECK(bundle(a, b, 1.0, stream).to_bit_string() == "0111");
  CHECK_THROWS_AS(bundle(a, b, -0.01, stream), std::invalid_argument);
  CHECK_THROWS_AS(bundle(a, b, 1.01, stream), std::invalid_argument);
}

TEST_CASE("bundle is idempotent without consuming randomness") {
  RandomStream stream(21), replica(21);
  State x = random_state(700, 0.4, stream);
  random_state(700, 0.4, replica);  // mirror the draw
  CHECK(bundle(x, x, 0.37, stream) == x);
  CHECK(stream.next() == replica.next());  // no coins were drawn
}

TEST_CASE("bundle keeps agreements and resolves disagreements at rate p") {
  RandomStream stream(77);
  const State x = random_state(256, 0.5, stream);
  const State y = random_state(256, 0.5, stream);
  const State m = bundle(x, y, 0.5, stream);
  for (std::size_t i = 0; i < 256; ++i) {
    if (x.bit(i) == y.bit(i)) CHECK(m.bit(i) == x.bit(i));
  }
  // All components disagree between ones and zeros; the result is Bernoulli(p).
  const State o = State::ones(10000);
  const State z = State::zeros(10000);
  const State r = bundle(o, z, 0.3, stream);
  CHECK(std::fabs(r.activity() - 0.3) <= 4.0 * binomial_sigma(0.3, 10000));
}

TEST_CASE("hamming distance basics") {
  const State a = State::from_bit_string("0110");
  const State b = State::from_bit_string("0101");
  CHECK(hamming_raw(a, b) == 2);
  CHECK(hamming(a, b) == 0.5);
  CHECK(hamming(a, a) == 0.0);

  RandomStream stream(31);
  const State x = random_state(512, 0.5, stream);
  const State y = random_state(512, 0.5, stream);
  const State z = random_state(512, 0.5, stream);
  CHECK(hamming_raw(x, y) == hamming_raw(y, x));
  CHECK(hamming_raw(x, z) <= hamming_raw(x, y) + hamming_raw(y, z));
}

TEST_CASE("hamming relates to bind agreement exactly") {
  RandomStream stream(32);
  for (int rep = 0; rep < 5; ++rep) {
    const State x = random_state(777, 0.4, stream);
    const State y = random_state(777, 0.4, stream);
    // d(x,y) = 1 - |x*y|/N, as integers: raw = N - popcount(bind).
    CHECK(hamming_raw(x, y) == 777 - bind(x, y).popcount());
    // bind moves x exactly on the zero components of y.
    CHECK(hamming_raw(x, bind(x, y)) == 777 - y.popcount());
  }
}

TEST_CASE("jaccard distance") {
  const State a = State::from_bit_string("0110");
  const State b = State::from_bit_string("0101");
  CHECK(jaccard(a, b) == doctest::Approx(2.0 / 3.0));
  CHECK(jaccard(a, a) == 0.0);
  CHECK(jaccard(State::zeros(16), State::zeros(16)) == 0.0);

  RandomStream stream(33);
  const State x = random_state(10000, 0.5, stream);
  CHECK(jaccard(x, x.complement()) == 1.0);
  // For independent q-states the ratio |AND|/|OR| concentrates on q/(2-q).
  const State y = random_state(10000, 0.5, stream);
  CHECK(jaccard(x, y) == doctest::Approx(1.0 - 0.5 / 1.5).epsilon(0.02));
}

TEST_CASE("global distance is the binomial cdf of the raw distance") {
  const State x = State::from_bit_string("0110");
  CHECK(global_distance(x, x, 0.5) == doctest::Approx(1.0 / 16.0));
  const State y = State::from_bit_string("0101");
  CHECK(global_distance(x, y, 0.5) == doctest::Approx(11.0 / 16.0));

  RandomStream stream(34);
  const State u = random_state(18, 0.5, stream);
  const State v = random_state(18, 0.5, stream);
  const int raw = static_cast<int>(hamming_raw(u, v));
  CHECK(global_distance(u, v, 0.3) ==
        doctest::Approx(oracle::exact_binomial_cdf(raw, 18, 2.0 * 0.3 * 0.7))
            .epsilon(1e-12));

  CHECK_THROWS_WITH_AS(global_distance(u, v, 0.0), doctest::Contains("ref_q"),
                       std::invalid_argument);
  CHECK_THROWS_AS(global_distance(u, v, 1.0), std::invalid_argument);
}

TEST_CASE("global distance grows with raw distance and with sharper spaces") {
  // Stay near the binomial bulk; far tails round to exactly 0 or 1.
  RandomStream stream(35);
  const State x = random_state(64, 0.5, stream);
  const State closer = similar_state(x, 0.1, SimilarMode::flip, stream);
  const State farther = similar_state(x, 0.4, SimilarMode::flip, stream);
  REQUIRE(hamming_raw(x, closer) < hamming_raw(x, farther));
  CHECK(global_distance(x, closer, 0.5) < global_distance(x, farther, 0.5));

  // The same normalized distance is less surprising in a smaller space.
  const State small_a = State::zeros(64);
  const State small_b = State::from_words({0xFFFFULL}, 64);
  const State big_a = State::zeros(256);
  const State big_b = State::from_words({~0ULL, 0, 0, 0}, 256);
  CHECK(hamming(small_a, small_b) == hamming(big_a, big_b));
  CHECK(global_distance(big_a, big_b, 0.5) <
        global_distance(small_a, small_b, 0.5));
}

TEST_CASE("approx_equal thresholds on global distance") {
  const State x = State::from_bit_string("0110");
  CHECK(approx_equal(x, x, 0.5, 0.1));       // D = 1/16
  CHECK_FALSE(approx_equal(x, x, 0.5, 0.05));
  CHECK_THROWS_AS(approx_equal(x, x, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("activity is the fraction of set components") {
  CHECK(activity(State::from_bit_string("0110")) == 0.5);
  CHECK(activity(State::zeros(8)) == 0.0);
  CHECK(activity(State::ones(8)) == 1.0);
}
