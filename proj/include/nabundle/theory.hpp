#pragma once

// Closed-form predictions used as oracles by tests and experiments.
// Everything here is a pure function of scalar parameters; no randomness.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nabundle::theory {

/// Mean Hamming distance of two independent q-states: 2q(1-q).
double expected_pair_distance(double q);

/// Mean distance from x to bind(x, y) for independent q-states: 1-q.
double expected_bind_distance(double q);

/// Mean distance from an operand to the bundle of two independent q-states.
/// Case analysis under the adopted convention gives q(1-q), independent of p;
/// the variant 2q(1-q)(1-p) is reported alongside it so the discrepancy stays
/// visible in reports.
struct BundleDistance {
  double consistent;
  double paper_variant;
};
BundleDistance expected_bundle_distance(double q, double p);

/// Activity of the running bundle of n independent q-states, n = 1..k:
/// P(1) = q, P(n) = q P(n-1) + p [(1-q) P(n-1) + q (1 - P(n-1))].
std::vector<double> activity_recurrence(double q, double p, std::size_t k);

/// Fixed point of the activity recurrence, pq / (1 - p(1-q) - q(1-p)).
double activity_limit(double q, double p);

/// Dense-case activity after k summands: p - (p - 1/2) 2^(1-k).
double activity_dense(double p, std::size_t k);

/// Slope of the linear activity recurrence, q + p - 2pq; successive gaps to
/// the fixed point shrink by exactly this factor.
double activity_contraction(double q, double p);

/// Lower bound 2p(1-q) on the distance between bundle and bind of a pair.
double separation_bound(double q, double p);

/// P[Binomial(n, prob) <= k] by exact summation. Terms are generated
/// multiplicatively from a log-space anchor at the in-range mode, so the sum
/// stays stable for n up to 1e6. Requires 0 <= k <= n and prob in [0,1].
double binomial_cdf(std::int64_t k, std::int64_t n, double prob);

}  // namespace nabundle::theory
