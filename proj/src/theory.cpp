#include "nabundle/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nabundle::theory {

namespace {

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

double expected_pair_distance(double q) {
  require_open_unit(q, "q");
  return 2.0 * q * (1.0 - q);
}

double expected_bind_distance(double q) {
  require_open_unit(q, "q");
  return 1.0 - q;
}

BundleDistance expected_bundle_distance(double q, double p) {
  require_open_unit(q, "q");
  require_unit(p, "p");
  return {q * (1.0 - q), 2.0 * q * (1.0 - q) * (1.0 - p)};
}

std::vector<double> activity_recurrence(double q, double p, std::size_t k) {
  require_open_unit(q, "q");
  require_unit(p, "p");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<double> out(k);
  out[0] = q;
  for (std::size_t n = 1; n < k; ++n) {
    const double prev = out[n - 1];
    out[n] = q * prev + p * ((1.0 - q) * prev + q * (1.0 - prev));
  }
  return out;
}

double activity_limit(double q, double p) {
  require_open_unit(q, "q");
  require_unit(p, "p");
  const double denom = 1.0 - p * (1.0 - q) - q * (1.0 - p);
  if (!(denom > 0.0))
    throw std::invalid_argument("degenerate activity recurrence denominator");
  return p * q / denom;
}

double activity_dense(double p, std::size_t k) {
  require_unit(p, "p");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return p - (p - 0.5) * std::exp2(1.0 - static_cast<double>(k));
}

double activity_contraction(double q, double p) {
  require_open_unit(q, "q");
  require_unit(p, "p");
  return q + p - 2.0 * p * q;
}

double separation_bound(double q, double p) {
  require_open_unit(q, "q");
  require_unit(p, "p");
  return 2.0 * p * (1.0 - q);
}

double binomial_cdf(std::int64_t k, std::int64_t n, double prob) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0,n]");
  require_unit(prob, "prob");
  if (prob == 0.0) return 1.0;
  if (prob == 1.0) return k == n ? 1.0 : 0.0;
  if (k == n) return 1.0;

  const double log_p = std::log(prob);
  const double log_1p = std::log1p(-prob);
  auto log_pmf = [&](std::int64_t i) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(i) + 1.0) -
           std::lgamma(static_cast<double>(n - i) + 1.0) +
           static_cast<double>(i) * log_p +
           static_cast<double>(n - i) * log_1p;
  };

  // Anchor at the largest term inside [0,k]; away from it, relative terms only
  // shrink, so the sum of ratios never overflows and far-tail underflow is
  // below double noise.
  const auto mode = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n + 1) * prob));
  const std::int64_t anchor = std::min(k, std::max<std::int64_t>(mode, 0));
  const double log_anchor = log_pmf(anchor);
  const double odds = prob / (1.0 - prob);

  double rel_sum = 1.0;
  double rel = 1.0;
  for (std::int64_t i = anchor; i > 0; --i) {
    // term(i-1) / term(i) = i (1-p) / ((n-i+1) p)
    rel *= static_cast<double>(i) / (static_cast<double>(n - i + 1) * odds);
    if (rel < 1e-305) break;
    rel_sum += rel;
  }
  rel = 1.0;
  for (std::int64_t i = anchor + 1; i <= k; ++i) {
    // term(i) / term(i-1) = (n-i+1) p / (i (1-p))
    rel *= static_cast<double>(n - i + 1) * odds / static_cast<double>(i);
    if (rel < 1e-305) break;
    rel_sum += rel;
  }

  const double cdf = std::exp(log_anchor + std::log(rel_sum));
  return std::clamp(cdf, 0.0, 1.0);
}

}  // namespace nabundle::theory
