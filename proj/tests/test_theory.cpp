#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Closed-form layer versus independent enumeration oracles. The oracles in
// oracle.hpp derive every expectation by brute-force case enumeration or
// direct probability iteration, so agreement here is two-sided evidence.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nabundle/theory.hpp"
#include "oracle.hpp"

using namespace nabundle;

namespace {

const std::vector<double> kQGrid{0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9};
const std::vector<double> kPGrid{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

}  // namespace

TEST_CASE("expected pair distance matches enumeration") {
  CHECK(theory::expected_pair_distance(0.5) == doctest::Approx(0.5));
  for (double q : kQGrid) {
    CHECK(theory::expected_pair_distance(q) ==
          doctest::Approx(oracle::pair_distance(q)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(theory::expected_pair_distance(0.0), std::invalid_argument);
}

TEST_CASE("expected bind distance matches enumeration") {
  CHECK(theory::expected_bind_distance(0.5) == doctest::Approx(0.5));
  for (double q : kQGrid) {
    CHECK(theory::expected_bind_distance(q) ==
          doctest::Approx(oracle::bind_distance(q)).epsilon(1e-12));
  }
}

TEST_CASE("expected bundle distance: consistent value is p-free") {
  for (double q : kQGrid) {
    for (double p : kPGrid) {
      const auto bd = theory::expected_bundle_distance(q, p);
      CHECK(bd.consistent ==
            doctest::Approx(oracle::bundle_operand_distance(q, p)).epsilon(1e-12));
      CHECK(bd.consistent == doctest::Approx(q * (1.0 - q)).epsilon(1e-12));
      CHECK(bd.paper_variant ==
            doctest::Approx(2.0 * q * (1.0 - q) * (1.0 - p)).epsilon(1e-12));
    }
  }
  // The two disagree everywhere except p = 1/2.
  CHECK(theory::expected_bundle_distance(0.5, 0.5).paper_variant ==
        doctest::Approx(theory::expected_bundle_distance(0.5, 0.5).consistent));
  CHECK(theory::expected_bundle_distance(0.5, 0.25).paper_variant !=
        theory::expected_bundle_distance(0.5, 0.25).consistent);
}

TEST_CASE("activity recurrence matches the enumerated one-step law") {
  for (double q : kQGrid) {
    for (double p : kPGrid) {
      const auto lib = theory::activity_recurrence(q, p, 12);
      const auto ref = oracle::chain_activity(q, p, 12);
      REQUIRE(lib.size() == 12);
      for (std::size_t i = 0; i < 12; ++i) {
        CHECK(lib[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      }
    }
  }
  CHECK(theory::activity_recurrence(0.3, 0.2, 1).size() == 1);
  CHECK(theory::activity_recurrence(0.3, 0.2, 1)[0] == doctest::Approx(0.3));
  CHECK_THROWS_AS(theory::activity_recurrence(0.3, 0.2, 0), std::invalid_argument);
}

TEST_CASE("dense closed form equals the recurrence at q = 1/2") {
  for (int pi = 0; pi <= 10; ++pi) {
    const double p = pi / 10.0;
    const auto rec = theory::activity_recurrence(0.5, p, 64);
    for (std::size_t k = 1; k <= 64; ++k) {
      CHECK(std::fabs(theory::activity_dense(p, k) - rec[k - 1]) <= 1e-12);
    }
  }
  CHECK(theory::activity_dense(0.1, 3) == doctest::Approx(0.2));
}

TEST_CASE("activity limit is the fixed point of the recurrence") {
  for (double q : kQGrid) {
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const double limit = theory::activity_limit(q, p);
      const double stepped = oracle::activity_step(limit, q, p);
      CHECK(stepped == doctest::Approx(limit).epsilon(1e-12));
      const auto rec = theory::activity_recurrence(q, p, 200);
      CHECK(rec.back() == doctest::Approx(limit).epsilon(1e-9));
    }
  }
  // Dense space: the limit is p itself.
  CHECK(theory::activity_limit(0.5, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("successive gaps to the limit shrink by the contraction factor") {
  for (double q : {0.1, 0.25, 0.4, 0.6}) {
    for (double p : {0.1, 0.25, 0.5, 0.75}) {
      const double limit = theory::activity_limit(q, p);
      if (std::fabs(q - limit) < 1e-6) continue;  // starts at the fixed point
      const double factor = theory::activity_contraction(q, p);
      const auto rec = theory::activity_recurrence(q, p, 6);
      for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
        const double gap = rec[i] - limit;
        const double next_gap = rec[i + 1] - limit;
        REQUIRE(std::fabs(gap) > 1e-9);
        CHECK(std::fabs(next_gap / gap - factor) <= 1e-6);
      }
    }
  }
  CHECK(theory::activity_contraction(0.5, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("separation bound sits below the enumerated separation for p <= 1/2") {
  for (double q : kQGrid) {
    for (double p : {0.0, 0.1, 0.25, 0.4, 0.5}) {
      const double bound = theory::separation_bound(q, p);
      const double exact = oracle::separation_distance(q, p);
      CHECK(bound == doctest::Approx(2.0 * p * (1.0 - q)).epsilon(1e-12));
      CHECK(exact >= bound - 1e-12);
      // The slack is (1-q)^2 (1-2p), zero exactly at p = 1/2.
      CHECK(exact - bound ==
            doctest::Approx((1.0 - q) * (1.0 - q) * (1.0 - 2.0 * p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("binomial cdf matches exact enumeration for n <= 20") {
  for (int n = 1; n <= 20; ++n) {
    for (double prob : {0.05, 0.3, 0.5, 0.8}) {
      for (int k = 0; k <= n; ++k) {
        CHECK(theory::binomial_cdf(k, n, prob) ==
              doctest::Approx(oracle::exact_binomial_cdf(k, n, prob))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("binomial cdf is monotone in k with exact endpoints") {
  for (double prob : {0.2, 0.5, 0.42}) {
    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
      const double c = theory::binomial_cdf(k, 50, prob);
      CHECK(c >= prev - 1e-12);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-12);
      prev = c;
    }
    CHECK(theory::binomial_cdf(50, 50, prob) == doctest::Approx(1.0));
    CHECK(theory::binomial_cdf(0, 50, prob) ==
          doctest::Approx(std::pow(1.0 - prob, 50)));
  }
}

TEST_CASE("binomial cdf is stable at n = 1e6") {
  const std::int64_t n = 1000000;
  const double prob = 0.5;
  const double mean = n * prob;
  const double sd = std::sqrt(n * prob * (1.0 - prob));
  const double at_mean = theory::binomial_cdf(static_cast<std::int64_t>(mean), n, prob);
  CHECK(at_mean > 0.49);
  CHECK(at_mean < 0.51);
  const double low = theory::binomial_cdf(
      static_cast<std::int64_t>(mean - 6.0 * sd), n, prob);
  const double high = theory::binomial_cdf(
      static_cast<std::int64_t>(mean + 6.0 * sd), n, prob);
  CHECK(low < 1e-6);
  CHECK(high > 1.0 - 1e-6);
  CHECK(std::isfinite(low));
  CHECK(std::isfinite(high));
  CHECK(low >= 0.0);
}

TEST_CASE("binomial cdf rejects out-of-range arguments") {
  CHECK_THROWS_AS(theory::binomial_cdf(-1, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(theory::binomial_cdf(11, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(theory::binomial_cdf(5, 10, 1.5), std::invalid_argument);
}
