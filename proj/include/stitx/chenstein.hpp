#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "stitx/error.hpp"
#include "stitx/extremes.hpp"
#include "stitx/geometry.hpp"
#include "stitx/parallel.hpp"
#include "stitx/random.hpp"

// Bookkeeping for the Poisson approximation of exceedance counts: the
// subdivision of W_rho (at t = 1) into |V| equal sub-squares, Chebyshev
// neighborhoods, per-square exceedance probabilities and the b1 bound.
namespace stitx::chenstein {

// 1-based position (i1, i2) in the sub-square grid.
struct GridIndex {
  long i1 = 1;
  long i2 = 1;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

struct SubdivisionSpec {
  double rho = 0.0;
  double tau = 0.0;
  double beta = 0.5;
  long side_count = 0;   // floor(sqrt(pi rho / ln ln rho))
  double cell_area = 0.0;  // pi rho / side_count^2

  double window_side() const { return std::sqrt(std::numbers::pi * rho); }
  double square_side() const { return window_side() / static_cast<double>(side_count); }
  double square_diagonal() const { return std::numbers::sqrt2 * square_side(); }
  long square_count() const { return side_count * side_count; }
  double v_rho() const { return extremes::threshold_v(rho, tau, 1.0); }
  // Neighborhood radius rho^{beta/2}.
  double neighborhood_radius() const { return std::pow(rho, beta / 2.0); }
};

inline SubdivisionSpec build_subdivision(double rho, double tau, double beta) {
  if (!(rho > std::numbers::e)) throw DomainError("build_subdivision: rho must exceed e");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("build_subdivision: beta must lie in (0, 1)");
  if (!(tau > 0.0)) throw DomainError("build_subdivision: tau must be positive");
  const double loglog = std::log(std::log(rho));
  const double sides = std::floor(std::sqrt(std::numbers::pi * rho / loglog));
  if (!std::isfinite(sides) || sides > static_cast<double>(std::numeric_limits<std::int32_t>::max()))
    throw DomainError("build_subdivision: rho too close to e, subdivision is unbounded");
  const long n = std::max(1L, static_cast<long>(sides));
  return {rho, tau, beta, n, std::numbers::pi * rho / static_cast<double>(n * n)};
}

// Sub-square diagonal strictly below v_rho: at most one incircle of radius
// above v_rho can have its center in a sub-square.
inline bool rho0_satisfied(const SubdivisionSpec& sub) { return sub.v_rho() > sub.square_diagonal(); }

inline bool in_grid(const SubdivisionSpec& sub, GridIndex i) {
  return i.i1 >= 1 && i.i2 >= 1 && i.i1 <= sub.side_count && i.i2 <= sub.side_count;
}

// {j in V : max(|i1 - j1|, |i2 - j2|) <= r}, row-major.
inline std::vector<GridIndex> neighborhood(const SubdivisionSpec& sub, GridIndex i, double r) {
  if (!in_grid(sub, i)) throw DomainError("neighborhood: index outside the grid");
  const long reach = static_cast<long>(std::floor(std::max(0.0, r)));
  std::vector<GridIndex> out;
  for (long a = std::max(1L, i.i1 - reach); a <= std::min(sub.side_count, i.i1 + reach); ++a)
    for (long b = std::max(1L, i.i2 - reach); b <= std::min(sub.side_count, i.i2 + reach); ++b) out.push_back({a, b});
  return out;
}

// Sub-square i as a polygon in the coordinates of the centered window W_rho.
inline ConvexPolygon sub_square(const SubdivisionSpec& sub, GridIndex i) {
  if (!in_grid(sub, i)) throw DomainError("sub_square: index outside the grid");
  const double s = sub.square_side();
  const double x0 = -0.5 * sub.window_side() + static_cast<double>(i.i1 - 1) * s;
  const double y0 = -0.5 * sub.window_side() + static_cast<double>(i.i2 - 1) * s;
  return rectangle(x0, y0, x0 + s, y0 + s);
}

// P(M_i > v_rho) = a(i) gamma_1 e^{-2 v_rho}, equal to tau / |V|.
inline double p_i_analytic(const SubdivisionSpec& sub) {
  if (!rho0_satisfied(sub)) throw DomainError("p_i_analytic: rho below rho0(tau); single-exceedance formula invalid");
  return sub.cell_area / std::numbers::pi * std::exp(-2.0 * sub.v_rho());
}

// b1 <= tau^2 / |V| * (2 rho^{beta/2} + 1)^2.
inline double b1_bound(const SubdivisionSpec& sub) {
  const double reach = 2.0 * sub.neighborhood_radius() + 1.0;
  return sub.tau * sub.tau / static_cast<double>(sub.square_count()) * reach * reach;
}

// b1 = sum_i sum_{j in S(i, rho^{beta/2})} p_i p_j evaluated exactly from the
// analytic p_i. Row and column reaches factor, so the grid sum is the square of
// a 1-d sum.
inline double b1_exact(const SubdivisionSpec& sub) {
  const double p = p_i_analytic(sub);
  const long reach = static_cast<long>(std::floor(sub.neighborhood_radius()));
  double line = 0.0;
  for (long i = 1; i <= sub.side_count; ++i)
    line += static_cast<double>(std::min(sub.side_count, i + reach) - std::max(1L, i - reach) + 1);
  return p * p * line * line;
}

struct PairEstimate {
  double estimate = 0.0;  // P(M_i > v, M_j > v)
  double std_error = 0.0;
  double p_i = 0.0;  // marginal frequencies from the same replications
  double p_j = 0.0;
  double std_error_i = 0.0;
  double std_error_j = 0.0;
  std::size_t replications = 0;
  // Replications in which some sub-square held two or more exceedances.
  std::size_t multi_exceedance_squares = 0;
};

inline constexpr std::uint32_t kPairStreamTag = 0x43530000u;

// Monte Carlo estimate of the joint exceedance probability of sub-squares
// i and j, with binomial standard errors.
inline PairEstimate estimate_pair_exceedance(const SubdivisionSpec& sub, GridIndex i, GridIndex j,
                                             std::size_t replications, std::uint64_t seed, unsigned threads = 1,
                                             double margin = -1.0) {
  if (i == j) throw DomainError("estimate_pair_exceedance: requires i != j");
  if (!in_grid(sub, i) || !in_grid(sub, j)) throw DomainError("estimate_pair_exceedance: index outside the grid");
  if (replications < 100) throw DomainError("estimate_pair_exceedance: need at least 100 replications");
  const extremes::ObservationWindow window = extremes::build_window(sub.rho, 1.0);
  if (margin < 0.0) margin = extremes::default_margin(sub.rho, sub.tau, 1.0);
  const double v = sub.v_rho();
  const ConvexPolygon sq_i = sub_square(sub, i);
  const ConvexPolygon sq_j = sub_square(sub, j);

  struct Outcome {
    bool hit_i = false;
    bool hit_j = false;
    bool multi = false;
  };
  const auto outcomes = parallel_map(replications, threads, [&](std::size_t rep) {
    RandomStream rng(seed, stream_id(rep, kPairStreamTag));
    const auto records = extremes::simulate_records(window, margin, rng);
    Outcome o;
    long in_i = 0, in_j = 0;
    for (const auto& r : records.records) {
      if (r.inradius <= v) continue;
      if (contains(sq_i, r.incenter)) ++in_i;
      if (contains(sq_j, r.incenter)) ++in_j;
    }
    o.hit_i = in_i > 0;
    o.hit_j = in_j > 0;
    o.multi = in_i > 1 || in_j > 1;
    return o;
  });

  PairEstimate est;
  est.replications = replications;
  double both = 0, ni = 0, nj = 0;
  for (const Outcome& o : outcomes) {
    both += (o.hit_i && o.hit_j) ? 1 : 0;
    ni += o.hit_i ? 1 : 0;
    nj += o.hit_j ? 1 : 0;
    est.multi_exceedance_squares += o.multi ? 1 : 0;
  }
  const double n = static_cast<double>(replications);
  auto binomial = [n](double k, double& phat, double& se) {
    phat = k / n;
    se = std::sqrt(phat * (1.0 - phat) / n);
  };
  binomial(both, est.estimate, est.std_error);
  binomial(ni, est.p_i, est.std_error_i);
  binomial(nj, est.p_j, est.std_error_j);
  return est;
}

}  // namespace stitx::chenstein
