#pragma once

// Fold bundles over item sequences and everything built on them: memory
// states, distance/similarity profiles, convergence iteration, cleanup
// memory, recall scores, and the online stream filter.
//
// Because bundling is non-associative for 0 < p < 1, the left-associative
// fold L and the right-associative fold R of the same list differ: L stays
// closest to the most recent items, R to the earliest ones.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nabundle/ops.hpp"
#include "nabundle/rng.hpp"
#include "nabundle/state.hpp"

namespace nabundle {

enum class BundleSide { left, right };

/// How the initial state eta of a freshly simulated trial is chosen.
enum class EtaPolicy { random_q, zeros };

/// The two fold bundles of one input sequence, plus the item count and the
/// initial state they were built from. With count == 0, left == right == eta.
struct MemoryState {
  State left;
  State right;
  std::size_t count;
  State eta;
};

/// ((((eta + a) + b) + c) ...; empty items returns eta unchanged.
State left_bundle(const State& eta, std::span<const State> items, double p,
                  RandomStream& stream);

/// eta + (a + (b + (c + ...))); empty items returns eta unchanged.
State right_bundle(const State& eta, std::span<const State> items, double p,
                   RandomStream& stream);

/// Builds both folds with independent noise draws.
MemoryState encode_sequence(const State& eta, std::span<const State> items,
                            double p, RandomStream& stream);

/// Per-serial-position mean distances from list items to one fold bundle,
/// averaged over independently regenerated trial lists. Index 0 holds
/// position 1.
struct DistanceProfile {
  std::vector<double> mean_local;    // mean Hamming distance
  std::vector<double> mean_global;   // mean global distance D
  std::vector<double> stderr_local;  // standard error of mean_local
  BundleSide side;
  std::size_t trials;

  std::size_t positions() const { return mean_local.size(); }
};

/// Estimates the distance profile for lists shaped like (memory, items):
/// each trial regenerates a fresh eta (per policy) and fresh q-state items,
/// re-encodes, and measures per-position distances to the chosen fold.
/// Requires items.size() == memory.count and a non-empty list.
DistanceProfile distance_profile(const MemoryState& memory,
                                 std::span<const State> items, BundleSide side,
                                 std::size_t trials, double ref_q,
                                 const SpaceParams& params, RandomStream& stream,
                                 EtaPolicy eta_policy = EtaPolicy::random_q);

struct SimilarityProfiles {
  DistanceProfile baseline;
  DistanceProfile modified;
  /// Paired per-position z-scores of (modified - baseline) mean local
  /// distance, computed from per-trial differences.
  std::vector<double> z_scores;
};

/// Baseline L-profile of independent lists versus the profile of the same
/// lists with the item at position `similar_at` replaced by
/// similar_state(items[similar_to], delta). Positions are zero-based here.
SimilarityProfiles similarity_profile(std::span<const State> items,
                                      std::size_t similar_at,
                                      std::size_t similar_to, double delta,
                                      std::size_t trials, double ref_q,
                                      const SpaceParams& params,
                                      RandomStream& stream,
                                      EtaPolicy eta_policy = EtaPolicy::random_q);

/// Distances d(y, L_t) for t = 1..m where L_0 = x and L_t = bundle(L_{t-1}, y).
std::vector<double> converge(const State& x, const State& y, double p,
                             std::size_t m, RandomStream& stream);

/// Ordered label -> state store used for nearest-neighbour retrieval.
class CleanupMemory {
 public:
  void add(std::string label, State state);
  std::size_t size() const { return entries_.size(); }
  const std::pair<std::string, State>& entry(std::size_t i) const {
    return entries_[i];
  }
  bool contains_state(const State& s) const;

  /// Index of the unique nearest entry by Hamming distance; nullopt when the
  /// store is empty or the minimum is tied.
  std::optional<std::size_t> nearest_unique(const State& probe) const;

 private:
  std::vector<std::pair<std::string, State>> entries_;
};

/// Fraction of trials, per serial position, in which that item is the unique
/// nearest cleanup entry to L or to R. Trials regenerate fresh lists shaped
/// like (memory, items) and fresh distractors matching the surplus cleanup
/// entries. Requires cleanup to contain every list item.
std::vector<double> recall_scores(const MemoryState& memory,
                                  std::span<const State> items,
                                  const CleanupMemory& cleanup,
                                  std::size_t trials, const SpaceParams& params,
                                  RandomStream& stream,
                                  EtaPolicy eta_policy = EtaPolicy::random_q);

/// Online filter over a stream of states: an incrementally maintained left
/// bundle plus a bounded window for the right bundle. The right fold consumes
/// future items, so it cannot be maintained incrementally; the window bounds
/// that lookback.
struct FilterState {
  State online_left;
  std::vector<State> window;  // oldest first, never exceeds window_size
  std::size_t window_size;
  SpaceParams params;
  State eta;
};

FilterState make_filter(const SpaceParams& params, std::size_t window_size,
                        State eta);

struct FilterOutput {
  FilterState state;
  double novelty;  // D(x, online L) before the update
  double recency;  // D(x, right bundle of the window) after the update
};

/// Advances the filter by one input. Reference activities for D are the
/// current bundle activities, clamped away from 0 and 1.
FilterOutput filter_step(FilterState fs, const State& x, RandomStream& stream);

}  // namespace nabundle
