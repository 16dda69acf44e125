#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "stitx/error.hpp"

namespace stitx::stats {

inline double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
inline double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

inline double std_error_of_mean(std::span<const double> x) {
  return x.empty() ? 0.0 : sample_sd(x) / std::sqrt(static_cast<double>(x.size()));
}

// Pooled proportion sum(hits) / sum(trials) over clusters, with the
// cluster-robust (ratio estimator) standard error.
struct Ratio {
  double value = 0.0;
  double std_error = 0.0;
};

inline Ratio ratio_estimate(std::span<const double> hits, std::span<const double> trials) {
  if (hits.size() != trials.size()) throw DomainError("ratio_estimate: size mismatch");
  const std::size_t n = hits.size();
  double sh = 0.0, st = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sh += hits[i];
    st += trials[i];
  }
  if (st <= 0.0) return {};
  const double r = sh / st;
  if (n < 2) return {r, 0.0};
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += (hits[i] - r * trials[i]) * (hits[i] - r * trials[i]);
  const double tbar = st / static_cast<double>(n);
  return {r, std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1))) / tbar};
}

// Empirical pmf of nonnegative integer counts on {0, ..., max}.
inline std::vector<double> empirical_pmf(std::span<const long> counts) {
  long hi = 0;
  for (long c : counts) {
    if (c < 0) throw DomainError("empirical_pmf: negative count");
    hi = std::max(hi, c);
  }
  std::vector<double> p(static_cast<std::size_t>(hi) + 1, 0.0);
  if (counts.empty()) return p;
  for (long c : counts) p[static_cast<std::size_t>(c)] += 1.0;
  for (double& v : p) v /= static_cast<double>(counts.size());
  return p;
}

// Linear-interpolated quantile of a sorted sample.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// sup_x |F_n(x) - F(x)| for a sorted sample against a continuous CDF.
template <class Cdf>
double ks_statistic(std::span<const double> sorted, Cdf&& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace stitx::stats
