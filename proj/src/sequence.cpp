#include "nabundle/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nabundle {

namespace {

void require_dims(const State& s, std::size_t n_dims, const char* what) {
  if (s.dims() != n_dims) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch: " +
                                std::to_string(s.dims()) + " vs " +
                                std::to_string(n_dims));
  }
}

State make_eta(EtaPolicy policy, const SpaceParams& params,
               RandomStream& stream) {
  if (policy == EtaPolicy::zeros) return State::zeros(params.n_dims);
  return random_state(params, stream);
}

std::vector<State> fresh_items(std::size_t k, const SpaceParams& params,
                               RandomStream& stream) {
  std::vector<State> items;
  items.reserve(k);
  for (std::size_t i = 0; i < k; ++i) items.push_back(random_state(params, stream));
  return items;
}

// Clamp an activity estimate into (0,1) so it is usable as a global-distance
// reference; degenerate all-zero/all-one bundles map to the nearest
// representable activity 1/N.
double clamp_ref(double a, std::size_t n) {
  const double lo = 1.0 / static_cast<double>(n);
  return std::min(1.0 - lo, std::max(lo, a));
}

}  // namespace

State left_bundle(const State& eta, std::span<const State> items, double p,
                  RandomStream& stream) {
  State acc = eta;
  for (const State& item : items) acc = bundle(acc, item, p, stream);
  return acc;
}

State right_bundle(const State& eta, std::span<const State> items, double p,
                   RandomStream& stream) {
  if (items.empty()) return eta;
  // eta is the outermost summand: eta + (a1 + (a2 + ... (a_{k-1} + a_k))).
  State acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) {
    acc = bundle(items[i], acc, p, stream);
  }
  return bundle(eta, acc, p, stream);
}

MemoryState encode_sequence(const State& eta, std::span<const State> items,
                            double p, RandomStream& stream) {
  // Independent noise for the two folds, in a fixed fork order.
  RandomStream left_stream = stream.fork();
  RandomStream right_stream = stream.fork();
  State left = left_bundle(eta, items, p, left_stream);
  State right = right_bundle(eta, items, p, right_stream);
  return MemoryState{std::move(left), std::move(right), items.size(), eta};
}

DistanceProfile distance_profile(const MemoryState& memory,
                                 std::span<const State> items, BundleSide side,
                                 std::size_t trials, double ref_q,
                                 const SpaceParams& params, RandomStream& stream,
                                 EtaPolicy eta_policy) {
  if (items.empty()) throw std::invalid_argument("distance_profile: empty list");
  if (items.size() != memory.count) {
    throw std::invalid_argument(
        "distance_profile: items length " + std::to_string(items.size()) +
        " does not match memory count " + std::to_string(memory.count));
  }
  if (trials == 0) throw std::invalid_argument("distance_profile: trials must be >= 1");
  params.validate();
  require_dims(memory.left, params.n_dims, "distance_profile");
  for (const State& s : items) require_dims(s, params.n_dims, "distance_profile");

  const std::size_t k = items.size();
  std::vector<double> sum_local(k, 0.0), sum_sq(k, 0.0), sum_global(k, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream ts = stream.fork();
    State eta = make_eta(eta_policy, params, ts);
    std::vector<State> list = fresh_items(k, params, ts);
    State fold = side == BundleSide::left
                     ? left_bundle(eta, list, params.p, ts)
                     : right_bundle(eta, list, params.p, ts);
    for (std::size_t i = 0; i < k; ++i) {
      double d = hamming(list[i], fold);
      sum_local[i] += d;
      sum_sq[i] += d * d;
      sum_global[i] += global_distance(list[i], fold, ref_q);
    }
  }

  DistanceProfile profile;
  profile.side = side;
  profile.trials = trials;
  profile.mean_local.resize(k);
  profile.mean_global.resize(k);
  profile.stderr_local.resize(k);
  const double n = static_cast<double>(trials);
  for (std::size_t i = 0; i < k; ++i) {
    const double mean = sum_local[i] / n;
    profile.mean_local[i] = mean;
    profile.mean_global[i] = sum_global[i] / n;
    const double var = std::max(0.0, sum_sq[i] / n - mean * mean);
    profile.stderr_local[i] = trials > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  }
  return profile;
}

SimilarityProfiles similarity_profile(std::span<const State> items,
                                      std::size_t similar_at,
                                      std::size_t similar_to, double delta,
                                      std::size_t trials, double ref_q,
                                      const SpaceParams& params,
                                      RandomStream& stream,
                                      EtaPolicy eta_policy) {
  const std::size_t k = items.size();
  if (k == 0) throw std::invalid_argument("similarity_profile: empty list");
  if (similar_at >= k || similar_to >= k) {
    throw std::invalid_argument("similarity_profile: position out of range [0, " +
                                std::to_string(k) + ")");
  }
  if (similar_at == similar_to) {
    throw std::invalid_argument("similarity_profile: positions must differ");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("similarity_profile: delta must lie in [0,1]");
  }
  if (trials == 0) throw std::invalid_argument("similarity_profile: trials must be >= 1");
  params.validate();
  for (const State& s : items) require_dims(s, params.n_dims, "similarity_profile");

  // Paired design: each trial measures both lists built from the same base
  // items and the same eta, so per-position differences cancel shared noise.
  std::vector<double> sum_b(k, 0.0), sq_b(k, 0.0), sumg_b(k, 0.0);
  std::vector<double> sum_m(k, 0.0), sq_m(k, 0.0), sumg_m(k, 0.0);
  std::vector<double> sum_diff(k, 0.0), sq_diff(k, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream ts = stream.fork();
    State eta = make_eta(eta_policy, params, ts);
    std::vector<State> base = fresh_items(k, params, ts);
    std::vector<State> mod = base;
    mod[similar_at] =
        similar_state(base[similar_to], delta, SimilarMode::flip, ts);
    State fold_b = left_bundle(eta, base, params.p, ts);
    State fold_m = left_bundle(eta, mod, params.p, ts);
    for (std::size_t i = 0; i < k; ++i) {
      const double db = hamming(base[i], fold_b);
      const double dm = hamming(mod[i], fold_m);
      sum_b[i] += db;
      sq_b[i] += db * db;
      sumg_b[i] += global_distance(base[i], fold_b, ref_q);
      sum_m[i] += dm;
      sq_m[i] += dm * dm;
      sumg_m[i] += global_distance(mod[i], fold_m, ref_q);
      const double diff = dm - db;
      sum_diff[i] += diff;
      sq_diff[i] += diff * diff;
    }
  }

  const double n = static_cast<double>(trials);
  auto finish = [&](std::vector<double>& sum, std::vector<double>& sq,
                    std::vector<double>& sumg) {
    DistanceProfile p2;
    p2.side = BundleSide::left;
    p2.trials = trials;
    p2.mean_local.resize(k);
    p2.mean_global.resize(k);
    p2.stderr_local.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double mean = sum[i] / n;
      p2.mean_local[i] = mean;
      p2.mean_global[i] = sumg[i] / n;
      const double var = std::max(0.0, sq[i] / n - mean * mean);
      p2.stderr_local[i] = trials > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
    return p2;
  };

  SimilarityProfiles out{finish(sum_b, sq_b, sumg_b),
                         finish(sum_m, sq_m, sumg_m),
                         std::vector<double>(k, 0.0)};
  for (std::size_t i = 0; i < k; ++i) {
    const double mean = sum_diff[i] / n;
    const double var = std::max(0.0, sq_diff[i] / n - mean * mean);
    const double se = trials > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    out.z_scores[i] = se > 0.0 ? mean / se : 0.0;
  }
  return out;
}

std::vector<double> converge(const State& x, const State& y, double p,
                             std::size_t m, RandomStream& stream) {
  if (m == 0) throw std::invalid_argument("converge: m must be >= 1");
  std::vector<double> distances;
  distances.reserve(m);
  State acc = x;
  for (std::size_t t = 0; t < m; ++t) {
    acc = bundle(acc, y, p, stream);
    distances.push_back(hamming(y, acc));
  }
  return distances;
}

void CleanupMemory::add(std::string label, State state) {
  for (const auto& [existing, s] : entries_) {
    if (existing == label) {
      throw std::invalid_argument("cleanup memory: duplicate label: " + label);
    }
  }
  if (!entries_.empty() && entries_.front().second.dims() != state.dims()) {
    throw std::invalid_argument(
        "cleanup memory: dimension mismatch: " + std::to_string(state.dims()) +
        " vs " + std::to_string(entries_.front().second.dims()));
  }
  entries_.emplace_back(std::move(label), std::move(state));
}

bool CleanupMemory::contains_state(const State& s) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.second == s; });
}

std::optional<std::size_t> CleanupMemory::nearest_unique(
    const State& probe) const {
  if (entries_.empty()) return std::nullopt;
  std::size_t best = 0;
  std::uint64_t best_d = hamming_raw(probe, entries_[0].second);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    const std::uint64_t d = hamming_raw(probe, entries_[i].second);
    if (d < best_d) {
      best = i;
      best_d = d;
      ties = 1;
    } else if (d == best_d) {
      ++ties;
    }
  }
  if (ties != 1) return std::nullopt;  // a tie means no unique winner
  return best;
}

std::vector<double> recall_scores(const MemoryState& memory,
                                  std::span<const State> items,
                                  const CleanupMemory& cleanup,
                                  std::size_t trials, const SpaceParams& params,
                                  RandomStream& stream, EtaPolicy eta_policy) {
  const std::size_t k = items.size();
  if (k == 0 || k != memory.count) {
    throw std::invalid_argument(
        "recall_scores: items length must match memory count and be >= 1");
  }
  if (cleanup.size() == 0) throw std::invalid_argument("recall_scores: empty cleanup");
  if (cleanup.size() < k) {
    throw std::invalid_argument("recall_scores: cleanup smaller than the list");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!cleanup.contains_state(items[i])) {
      throw std::invalid_argument("recall_scores: cleanup is missing list item " +
                                  std::to_string(i + 1));
    }
  }
  if (trials == 0) throw std::invalid_argument("recall_scores: trials must be >= 1");
  params.validate();
  const std::size_t distractors = cleanup.size() - k;

  // Murdock's criterion: item i counts as recalled when no other entry is
  // closer to the probe; we probe with both halves of the memory state and
  // take the union of the two winners.
  std::vector<double> scores(k, 0.0);
  std::vector<State> entries;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream ts = stream.fork();
    State eta = make_eta(eta_policy, params, ts);
    std::vector<State> list = fresh_items(k, params, ts);
    entries = list;
    for (std::size_t dtr = 0; dtr < distractors; ++dtr) {
      entries.push_back(random_state(params, ts));
    }
    MemoryState ms = encode_sequence(eta, list, params.p, ts);

    auto winner = [&](const State& probe) -> std::optional<std::size_t> {
      std::size_t best = 0;
      std::uint64_t best_d = hamming_raw(probe, entries[0]);
      std::size_t ties = 1;
      for (std::size_t i = 1; i < entries.size(); ++i) {
        const std::uint64_t d = hamming_raw(probe, entries[i]);
        if (d < best_d) {
          best = i;
          best_d = d;
          ties = 1;
        } else if (d == best_d) {
          ++ties;
        }
      }
      if (ties != 1) return std::nullopt;
      return best;
    };

    std::optional<std::size_t> from_left = winner(ms.left);
    std::optional<std::size_t> from_right = winner(ms.right);
    for (std::size_t i = 0; i < k; ++i) {
      if ((from_left && *from_left == i) || (from_right && *from_right == i)) {
        scores[i] += 1.0;
      }
    }
  }
  for (double& s : scores) s /= static_cast<double>(trials);
  return scores;
}

FilterState make_filter(const SpaceParams& params, std::size_t window_size,
                        State eta) {
  params.validate();
  if (window_size == 0) {
    throw std::invalid_argument("make_filter: window size must be >= 1");
  }
  require_dims(eta, params.n_dims, "make_filter");
  FilterState fs{eta, {}, window_size, params, eta};
  fs.window.reserve(window_size);
  return fs;
}

FilterOutput filter_step(FilterState fs, const State& x, RandomStream& stream) {
  require_dims(x, fs.params.n_dims, "filter_step");
  const double novelty_ref = clamp_ref(fs.online_left.activity(), fs.params.n_dims);
  const double novelty = global_distance(x, fs.online_left, novelty_ref);

  fs.online_left = bundle(fs.online_left, x, fs.params.p, stream);
  fs.window.push_back(x);
  if (fs.window.size() > fs.window_size) fs.window.erase(fs.window.begin());

  // The right fold consumes future items, so an exact online R is impossible;
  // the bounded window is the documented approximation.
  State recent = right_bundle(fs.eta, fs.window, fs.params.p, stream);
  const double recency_ref = clamp_ref(recent.activity(), fs.params.n_dims);
  const double recency = global_distance(x, recent, recency_ref);
  return FilterOutput{std::move(fs), novelty, recency};
}

}  // namespace nabundle
