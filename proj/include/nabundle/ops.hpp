#pragma once

// Algebraic operators and distance measures on bit-packed states.
//
// bind is component-wise XNOR. bundle keeps agreeing components and resolves
// each disagreeing component to 1 with probability p, independently per
// component; p=0 is component-wise AND and p=1 is component-wise OR, and only
// those two boundary cases are associative.

#include <cstddef>

#include "nabundle/rng.hpp"
#include "nabundle/state.hpp"

namespace nabundle {

enum class SimilarMode { flip, swap };

/// Fresh state whose bits are independently 1 with probability q.
State random_state(std::size_t n_dims, double q, RandomStream& stream);
State random_state(const SpaceParams& params, RandomStream& stream);

/// Perturbed copy of x. flip inverts each bit independently with probability
/// delta (expected Hamming distance delta); swap toggles exactly
/// round(delta*N/2) one-bits and as many zero-bits, preserving |x| and giving
/// Hamming distance 2*round(delta*N/2)/N.
State similar_state(const State& x, double delta, SimilarMode mode,
                    RandomStream& stream);

/// Component-wise XNOR; deterministic and commutative.
State bind(const State& x, const State& y);

/// Stochastic superposition. Boundary values p=0 (AND) and p=1 (OR) are
/// deterministic and consume no randomness; otherwise one Bernoulli(p) draw
/// is made per disagreeing component, in ascending bit order.
State bundle(const State& x, const State& y, double p, RandomStream& stream);

/// Number of differing components.
std::size_t hamming_raw(const State& x, const State& y);

/// Normalized Hamming distance in [0,1].
double hamming(const State& x, const State& y);

/// 1 - |AND| / |OR|; defined as 0 when both states are all-zero.
double jaccard(const State& x, const State& y);

/// Probability that two independent ref_q-states land at most as far apart as
/// x and y: the Binomial(N, 2*ref_q*(1-ref_q)) CDF at the raw Hamming
/// distance. Increasing in d(x,y), decreasing in N at fixed d.
double global_distance(const State& x, const State& y, double ref_q);

/// True iff global_distance(x, y, ref_q) <= epsilon.
bool approx_equal(const State& x, const State& y, double ref_q, double epsilon);

/// Fraction of active components, |x|/N.
double activity(const State& x);

}  // namespace nabundle
