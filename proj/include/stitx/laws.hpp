#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "stitx/error.hpp"
#include "stitx/linemeasure.hpp"

namespace stitx::laws {

// P(R(Z) > v) for the typical cell at time t: the inradius is Exp(2t).
inline double typical_inradius_survival(double t, double v) {
  if (!(t > 0.0)) throw DomainError("typical_inradius_survival: t must be positive");
  if (v < 0.0) throw DomainError("typical_inradius_survival: v must be nonnegative");
  return std::exp(-2.0 * t * v);
}

// Cell intensity gamma_t = t^2 / pi.
inline double cell_intensity(double t) {
  if (!(t > 0.0)) throw DomainError("cell_intensity: t must be positive");
  return t * t / std::numbers::pi;
}

inline double poisson_pmf(double tau, long r) {
  if (!(tau > 0.0)) throw DomainError("poisson_pmf: tau must be positive");
  if (r < 0) return 0.0;
  return std::exp(-tau + static_cast<double>(r) * std::log(tau) - std::lgamma(static_cast<double>(r) + 1.0));
}

inline double poisson_cdf(double tau, long k) {
  double s = 0.0;
  for (long r = 0; r <= k; ++r) s += poisson_pmf(tau, r);
  return std::min(1.0, s);
}

inline constexpr double kTailMass = 1e-12;

// Poisson(tau) pmf on {0..n-1}, n the first index past the mode at which the
// remaining tail mass drops below kTailMass.
struct TruncatedPmf {
  std::vector<double> p;
  double tail = 0.0;  // mass beyond the stored support
};

inline TruncatedPmf poisson_truncated(double tau, long min_support = 0) {
  TruncatedPmf out;
  double acc = 0.0;
  for (long r = 0;; ++r) {
    const double pr = poisson_pmf(tau, r);
    out.p.push_back(pr);
    acc += pr;
    const double tail = std::max(0.0, 1.0 - acc);
    if (static_cast<double>(r) > tau && tail < kTailMass && r + 1 >= min_support) {
      // Tail past r bounded by a geometric series with ratio tau/(r+2) < 1.
      const double next = poisson_pmf(tau, r + 1);
      const double ratio = tau / static_cast<double>(r + 2);
      out.tail = next / (1.0 - ratio);
      break;
    }
  }
  return out;
}

// exp(-exp(-u)): limit law of the centered and scaled maximum inradius.
inline double gumbel_limit(double u) { return std::exp(-std::exp(-u)); }

// Constant of the two-disk avoidance bound, 2 / (2 - 4/pi).
inline double avoidance_bound_constant() { return 2.0 / (2.0 - 4.0 / std::numbers::pi); }

// eta * exp(-2(1 + 2/pi) r): d-uniform bound on the two-disk avoidance probability.
inline double two_disk_avoidance_bound(double r) {
  return avoidance_bound_constant() * std::exp(-2.0 * (1.0 + 2.0 / std::numbers::pi) * r);
}

// P(skeleton of Y_1 misses B(c1, r) u B(c2, r)) for |c1 - c2| = d >= 2r:
//
//   e^{-C} + S * (e^{-C} - e^{-2B}) / (2B - C)     if 2B != C,
//   e^{-C} + S * e^{-2B}                            if 2B == C,
//
// with B = Lambda([B_i]) = 2r, C = Lambda([conv(B1 u B2)]) and S the mass of
// separating lines. With D = 2B - C the quotient is e^{-C} (1 - e^{-D}) / D,
// evaluated via expm1, and by its Taylor series when |D| < 1e-8, which also
// gives the equal-mass case as the D -> 0 limit.
inline double two_disk_avoidance(double r, double d) {
  if (!(r > 0.0)) throw DomainError("two_disk_avoidance: r must be positive");
  if (d < 2.0 * r) throw DomainError("two_disk_avoidance: requires d >= 2r");
  const double single = linemeasure::lambda_hitting_disk(r);
  const double hull = linemeasure::lambda_conv_two_disks(r, d);
  const double sep = linemeasure::lambda_separating_disks(r, d);
  const double gap = 2.0 * single - hull;
  double factor;
  if (std::abs(gap) < 1e-8)
    factor = 1.0 - gap / 2.0 + gap * gap / 6.0;
  else
    factor = -std::expm1(-gap) / gap;
  return std::exp(-hull) * (1.0 + sep * factor);
}

// Total variation with the factor-2 convention: sum_r |p_r - q_r|. Shorter
// vectors are zero-padded.
inline double tv_distance(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0, mass_p = 0.0, mass_q = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double a = r < p.size() ? p[r] : 0.0;
    const double b = r < q.size() ? q[r] : 0.0;
    if (a < 0.0 || b < 0.0) throw DomainError("tv_distance: negative probability");
    mass_p += a;
    mass_q += b;
    s += std::abs(a - b);
  }
  if (mass_p > 1.0 + 1e-9 || mass_q > 1.0 + 1e-9) throw DomainError("tv_distance: total mass exceeds 1");
  return s;
}

// Arratia-Goldstein-Gordon bound:
//   2 ((b1 + b2) (1 - e^{-lambda}) / lambda + b3 min(1, 1.4 / sqrt(lambda))).
inline double agg_bound(double b1, double b2, double b3, double lambda) {
  if (b1 < 0.0 || b2 < 0.0 || b3 < 0.0) throw DomainError("agg_bound: b terms must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("agg_bound: lambda must be positive");
  return 2.0 * ((b1 + b2) * (-std::expm1(-lambda)) / lambda + b3 * std::min(1.0, 1.4 / std::sqrt(lambda)));
}

}  // namespace stitx::laws
