#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stitx/extremes.hpp"
#include "stitx/laws.hpp"
#include "stitx/random.hpp"
#include "support/oracles.hpp"

using namespace stitx;
using namespace stitx::laws;
constexpr double kPi = std::numbers::pi;

// Frozen from an independent 30-digit evaluation (mpmath, closed-form
// separating mass and adaptive quadrature agreeing to all digits).
constexpr double kTwoDiskReference = 0.154608455818301234;
constexpr double kTangentReference = 0.194636848441745986;  // e^{-(2r + 4r/pi)}, r = 0.5
constexpr double kEqualMassReference = 0.163825209356335126;  // r = 0.5, d = pi/2

TEST(TypicalInradius, SpecExamples) {
  EXPECT_EQ(typical_inradius_survival(1.0, 0.0), 1.0);
  EXPECT_NEAR(typical_inradius_survival(1.0, extremes::threshold_v(100, 2, 1)), 0.02, 1e-15);
  EXPECT_NEAR(typical_inradius_survival(2.0, 0.5), 0.13534, 1e-5);
  EXPECT_THROW(typical_inradius_survival(1.0, -0.1), DomainError);
}

TEST(TypicalInradius, StrictlyDecreasing) {
  double prev = 2.0;
  for (double v = 0; v < 20; v += 0.1) {
    const double s = typical_inradius_survival(1.3, v);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(CellIntensity, SpecExamples) {
  EXPECT_NEAR(cell_intensity(1.0), 0.31831, 1e-5);
  EXPECT_DOUBLE_EQ(cell_intensity(2.0), 4.0 / kPi);
  // gamma_t t^-2 pi rho survival(v_rho) = tau.
  for (double t : {0.5, 1.0, 3.0}) {
    const double rho = 100, tau = 2;
    EXPECT_NEAR(cell_intensity(t) / (t * t) * kPi * rho * typical_inradius_survival(t, extremes::threshold_v(rho, tau, t)),
                tau, 1e-12);
  }
}

TEST(Calibration, RhoTimesSurvivalAtThresholdIsTau) {
  RandomStream rng(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double tau = rng.uniform(0.01, 50), rho = tau * rng.uniform(1.001, 1e6), t = rng.uniform(0.1, 10);
    EXPECT_NEAR(rho * typical_inradius_survival(t, extremes::threshold_v(rho, tau, t)), tau, 1e-12 * tau * 100);
  }
}

TEST(Poisson, SpecExamples) {
  EXPECT_NEAR(poisson_pmf(1.0, 0), 0.36788, 1e-5);
  EXPECT_NEAR(poisson_pmf(2.0, 2), 2 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(poisson_pmf(2.0, 2), 0.27067, 1e-5);
  EXPECT_NEAR(poisson_cdf(2.0, 2), 5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(poisson_cdf(1.0, 2), 0.9197, 1e-4);
  // Large r in log space: no overflow, matches the recursion.
  double p = std::exp(-30.0);
  for (long r = 1; r <= 200; ++r) p *= 30.0 / static_cast<double>(r);
  EXPECT_NEAR(poisson_pmf(30.0, 200) / p, 1.0, 1e-10);
}

TEST(Poisson, TruncationMassAccounting) {
  for (double tau : {0.1, 1.0, 2.0, 7.5, 40.0}) {
    const auto t = poisson_truncated(tau);
    double s = 0;
    for (double v : t.p) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_LT(t.tail, 1e-12);
    EXPECT_GE(t.tail, 0.0);
    EXPECT_GE(poisson_truncated(tau, 100).p.size(), 100u);
  }
}

TEST(Gumbel, SpecExamples) {
  EXPECT_NEAR(gumbel_limit(0.0), 0.36788, 1e-5);
  EXPECT_NEAR(gumbel_limit(50.0), 1.0, 1e-15);
  EXPECT_NEAR(gumbel_limit(-std::log(2.0)), std::exp(-2.0), 1e-15);
  for (double u = -3; u < 5; u += 0.25) EXPECT_NEAR(gumbel_limit(u), poisson_pmf(std::exp(-u), 0), 1e-15);
  EXPECT_NEAR(gumbel_limit(-1), 0.0660, 1e-4);
  EXPECT_NEAR(gumbel_limit(1), 0.6922, 1e-4);
  EXPECT_NEAR(gumbel_limit(2), 0.8734, 1e-4);
}

TEST(TwoDisk, ReferenceValues) {
  EXPECT_NEAR(two_disk_avoidance(0.5, 2.0), kTwoDiskReference, 1e-10);
  EXPECT_NEAR(two_disk_avoidance(0.5, 2.0), oracle::two_disk_naive(0.5, 2.0), 1e-12);
  EXPECT_NEAR(two_disk_avoidance(0.5, 1.0), kTangentReference, 1e-12);
  EXPECT_NEAR(two_disk_avoidance(0.5, kPi / 2), kEqualMassReference, 1e-10);
  EXPECT_NEAR(avoidance_bound_constant(), 2.752, 1e-3);
  EXPECT_THROW(two_disk_avoidance(0.5, 0.99), DomainError);
}

TEST(TwoDisk, TangentCollapse) {
  for (double r : {0.1, 0.5, 1.0, 2.0}) EXPECT_NEAR(two_disk_avoidance(r, 2 * r), std::exp(-(2 * r + 4 * r / kPi)), 1e-12);
}

TEST(TwoDisk, ContinuousAcrossEqualMassPoint) {
  for (double r : {0.2, 0.5, 1.5}) {
    const double d0 = kPi * r;
    double prev = two_disk_avoidance(r, d0 - 1e-6);
    for (double h = -1e-6; h <= 1e-6; h += 1e-9) {
      const double v = two_disk_avoidance(r, d0 + h);
      EXPECT_LT(std::abs(v - prev), 1e-8);
      prev = v;
    }
    // Away from the singular point the stable form matches the naive one.
    EXPECT_NEAR(two_disk_avoidance(r, d0 + 0.3), oracle::two_disk_naive(r, d0 + 0.3), 1e-12);
  }
}

TEST(TwoDisk, BoundsAndMonotonicity) {
  for (double r = 0.05; r < 4; r += 0.15) {
    for (double d = 2 * r; d < 2 * r + 12; d += 0.2) {
      const double v = two_disk_avoidance(r, d);
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, two_disk_avoidance_bound(r));
      EXPECT_LE(v, std::exp(-2 * r));  // harder than avoiding one disk
      EXPECT_LT(two_disk_avoidance(r + 0.01, d + 0.02), v);
      EXPECT_LT(two_disk_avoidance(r + 0.01, std::max(d, 2 * r + 0.02)), two_disk_avoidance(r, std::max(d, 2 * r + 0.02)));
    }
  }
}

TEST(TotalVariation, SpecExamples) {
  const std::vector<double> a{0.2, 0.5, 0.3};
  EXPECT_EQ(tv_distance(a, a), 0.0);
  EXPECT_EQ(tv_distance(std::vector<double>{1.0}, std::vector<double>{0.0, 1.0}), 2.0);
  const auto p = poisson_truncated(1.0, 51).p;
  const auto q = poisson_truncated(1.1, 51).p;
  std::vector<double> p50(p.begin(), p.begin() + 51), q50(q.begin(), q.begin() + 51);
  double pos = 0;
  for (std::size_t r = 0; r < 51; ++r) pos += std::max(0.0, p50[r] - q50[r]);
  EXPECT_NEAR(tv_distance(p50, q50), 2 * pos, 1e-14);
  // Subset enumeration on the first 16 points (mass beyond is below 1e-13).
  std::vector<double> p16(p.begin(), p.begin() + 16), q16(q.begin(), q.begin() + 16);
  EXPECT_NEAR(tv_distance(p16, q16), oracle::tv_by_subsets(p16, q16), 1e-12);
}

TEST(TotalVariation, RejectsInvalidMass) {
  EXPECT_THROW(tv_distance(std::vector<double>{-0.1, 1.1}, std::vector<double>{1.0}), DomainError);
  EXPECT_THROW(tv_distance(std::vector<double>{0.7, 0.7}, std::vector<double>{1.0}), DomainError);
}

// Property test: symmetric, zero on the diagonal, triangle inequality, and
// equal to twice the largest event discrepancy.
TEST(TotalVariation, MetricProperties) {
  RandomStream rng(2, 0);
  auto random_pmf = [&](std::size_t n) {
    std::vector<double> v(n);
    double s = 0;
    for (double& x : v) s += (x = rng.exponential(1.0) * (rng.uniform() < 0.3 ? 0.0 : 1.0));
    if (s == 0) v[0] = s = 1;
    for (double& x : v) x /= s;
    return v;
  };
  for (int i = 0; i < 500; ++i) {
    const auto p = random_pmf(1 + static_cast<std::size_t>(rng.uniform() * 12));
    const auto q = random_pmf(1 + static_cast<std::size_t>(rng.uniform() * 12));
    const auto r = random_pmf(1 + static_cast<std::size_t>(rng.uniform() * 12));
    const double pq = tv_distance(p, q);
    EXPECT_NEAR(pq, tv_distance(q, p), 1e-15);
    EXPECT_LE(pq, tv_distance(p, r) + tv_distance(r, q) + 1e-12);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 2.0 + 1e-12);
    EXPECT_NEAR(tv_distance(p, p), 0.0, 0.0);
    EXPECT_NEAR(pq, oracle::tv_by_subsets(p, q), 1e-12);
  }
}

TEST(AggBound, SpecExamples) {
  EXPECT_EQ(agg_bound(0, 0, 0, 3.0), 0.0);
  const double expected = 2 * (0.15 * (1 - std::exp(-2.0)) / 2 + 0.01 * 1.4 / std::sqrt(2.0));
  EXPECT_NEAR(agg_bound(0.1, 0.05, 0.01, 2.0), expected, 1e-15);
  EXPECT_NEAR(agg_bound(0.1, 0.05, 0.01, 2.0), 0.14950, 1e-5);
  // Large lambda: dominated by 2 b3 1.4 / sqrt(lambda).
  for (double lambda : {1e4, 1e6, 1e8}) {
    const double v = agg_bound(0.1, 0.05, 0.01, lambda);
    EXPECT_NEAR(v, 2 * 0.01 * 1.4 / std::sqrt(lambda), 2 * 0.15 / lambda + 1e-18);
  }
  EXPECT_THROW(agg_bound(-1, 0, 0, 1), DomainError);
  EXPECT_THROW(agg_bound(0, 0, 0, 0), DomainError);
}
