#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stitx/error.hpp"
#include "stitx/extremes.hpp"
#include "stitx/laws.hpp"
#include "stitx/parallel.hpp"
#include "stitx/random.hpp"
#include "stitx/stats.hpp"
#include "stitx/stit.hpp"

// Monte Carlo harness for the extreme-value limit laws of STIT inradii.
//
// Replication r at intensity parameter rho draws from the stream
// (master_seed, stream_id(r, rho_tag(rho))), so a given (seed, rho, r)
// always sees the same tessellation regardless of which experiment runs it,
// how many threads are used, or which other rho values are configured.
namespace stitx::experiments {

struct ExperimentConfig {
  std::vector<double> rho_list{25.0, 50.0, 100.0, 200.0};
  double tau = 2.0;
  double t = 1.0;
  std::size_t replications = 1000;
  std::uint64_t master_seed = 1;
  std::optional<double> margin;  // nullopt: 4 v_rho + 2
  double beta = 0.5;
  bool filter_contaminated = false;
  unsigned threads = 1;
  std::size_t bootstrap_resamples = 1000;

  void validate() const {
    if (replications < 1) throw DomainError("experiment: replications must be >= 1");
    if (!(tau > 0.0) || !(t > 0.0)) throw DomainError("experiment: tau and t must be positive");
    if (rho_list.empty()) throw DomainError("experiment: empty rho list");
    for (double rho : rho_list)
      if (!(rho > tau)) throw DomainError("experiment: every rho must exceed tau");
    if (margin && *margin < 0.0) throw DomainError("experiment: negative margin");
  }

  double margin_for(double threshold) const {
    return margin ? *margin : 4.0 * std::max(0.0, threshold) + 2.0;
  }
};

// Stream tag derived from the bits of rho (splitmix64 finalizer, low word).
inline std::uint32_t rho_tag(double rho) {
  std::uint64_t z = std::bit_cast<std::uint64_t>(rho) + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<std::uint32_t>(z);
}

inline constexpr std::uint32_t kBootstrapTag = 0xB0075000u;
inline constexpr std::uint32_t kTwoDiskTag = 0x2D15C000u;
inline constexpr std::uint32_t kIntensityTag = 0x1A7E0000u;

// Contamination above this fraction aborts an experiment.
inline constexpr double kMaxContamination = 0.20;

struct ReplicationSet {
  double rho = 0.0;
  double margin = 0.0;
  std::vector<extremes::InradiusRecordSet> reps;

  double contamination_rate() const {
    double bad = 0.0, all = 0.0;
    for (const auto& r : reps) {
      bad += static_cast<double>(extremes::contaminated_count(r));
      all += static_cast<double>(r.records.size());
    }
    return all > 0.0 ? bad / all : 0.0;
  }
};

inline ReplicationSet run_replications(double rho, double t, double margin, std::size_t replications,
                                       std::uint64_t seed, unsigned threads) {
  const auto window = extremes::build_window(rho, t);
  const std::uint32_t tag = rho_tag(rho);
  ReplicationSet out{rho, margin, {}};
  out.reps = parallel_map(replications, threads, [&](std::size_t rep) {
    RandomStream rng(seed, stream_id(rep, tag));
    return extremes::simulate_records(window, margin, rng);
  });
  return out;
}

inline void check_contamination(const ReplicationSet& set) {
  const double rate = set.contamination_rate();
  if (rate > kMaxContamination)
    throw SimulationError("contamination " + std::to_string(rate) + " at rho=" + std::to_string(set.rho) +
                          " exceeds 20%; increase the margin (now " + std::to_string(set.margin) + ")");
}

// ----------------------------------------------------------------------------
// Exceedance counts and total variation to Poisson(tau).

struct TvEstimate {
  double tv = 0.0;              // sum_r |p_hat_r - q_r|, truncation tail included
  double truncation_tail = 0.0;  // Poisson mass beyond the explicit support
  double bootstrap_mean = 0.0;
  double ci_lo = 0.0;  // 2.5% bootstrap percentile
  double ci_hi = 0.0;  // 97.5% bootstrap percentile
  // 2 tv - bootstrap_mean, floored at 0: removes the first-order upward bias
  // of the plug-in estimate.
  double bias_corrected = 0.0;
};

inline double tv_to_poisson(std::span<const long> counts, double tau, double* tail_out = nullptr) {
  const std::vector<double> pmf = stats::empirical_pmf(counts);
  const laws::TruncatedPmf q = laws::poisson_truncated(tau, static_cast<long>(pmf.size()));
  if (tail_out) *tail_out = q.tail;
  return laws::tv_distance(pmf, q.p) + q.tail;
}

inline TvEstimate bootstrap_tv(std::span<const long> counts, double tau, std::size_t resamples, std::uint64_t seed,
                               std::uint32_t tag) {
  TvEstimate est;
  est.tv = tv_to_poisson(counts, tau, &est.truncation_tail);
  if (counts.empty() || resamples == 0) {
    est.bootstrap_mean = est.ci_lo = est.ci_hi = est.bias_corrected = est.tv;
    return est;
  }
  std::vector<double> boot;
  boot.reserve(resamples);
  std::vector<long> resample(counts.size());
  RandomStream rng(seed, stream_id(tag, kBootstrapTag));
  for (std::size_t b = 0; b < resamples; ++b) {
    for (long& c : resample) c = counts[static_cast<std::size_t>(rng.next_u64() % counts.size())];
    boot.push_back(tv_to_poisson(resample, tau));
  }
  est.bootstrap_mean = stats::mean(boot);
  std::sort(boot.begin(), boot.end());
  est.ci_lo = stats::quantile_sorted(boot, 0.025);
  est.ci_hi = stats::quantile_sorted(boot, 0.975);
  est.bias_corrected = std::max(0.0, 2.0 * est.tv - est.bootstrap_mean);
  return est;
}

struct ExceedanceRow {
  double rho = 0.0;
  double v_rho = 0.0;
  double margin = 0.0;
  std::size_t replications = 0;
  std::vector<long> counts;           // N per replication, all records
  std::vector<long> counts_filtered;  // N per replication, contaminated records dropped
  std::vector<double> pmf;
  double mean = 0.0;
  double std_error = 0.0;
  double mean_filtered = 0.0;
  TvEstimate tv;
  double tv_filtered = 0.0;
  double contamination_rate = 0.0;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  double tau = 0.0;
  double t = 0.0;
  std::vector<ExceedanceRow> rows;
};

inline ExperimentResult run_exceedance_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result{cfg.tau, cfg.t, {}};
  for (double rho : cfg.rho_list) {
    const auto start = std::chrono::steady_clock::now();
    ExceedanceRow row;
    row.rho = rho;
    row.v_rho = extremes::threshold_v(rho, cfg.tau, cfg.t);
    row.margin = cfg.margin_for(row.v_rho);
    row.replications = cfg.replications;
    const ReplicationSet set = run_replications(rho, cfg.t, row.margin, cfg.replications, cfg.master_seed, cfg.threads);
    check_contamination(set);
    row.contamination_rate = set.contamination_rate();
    std::vector<double> as_real;
    for (const auto& rs : set.reps) {
      row.counts.push_back(static_cast<long>(extremes::exceedance_count(rs, row.v_rho)));
      row.counts_filtered.push_back(static_cast<long>(extremes::exceedance_count(rs, row.v_rho, true)));
      as_real.push_back(static_cast<double>(row.counts.back()));
    }
    const auto& primary = cfg.filter_contaminated ? row.counts_filtered : row.counts;
    row.pmf = stats::empirical_pmf(primary);
    row.mean = stats::mean(as_real);
    row.std_error = stats::std_error_of_mean(as_real);
    std::vector<double> filtered_real(row.counts_filtered.begin(), row.counts_filtered.end());
    row.mean_filtered = stats::mean(filtered_real);
    if (cfg.filter_contaminated) {
      row.mean = row.mean_filtered;
      row.std_error = stats::std_error_of_mean(filtered_real);
    }
    row.tv = bootstrap_tv(primary, cfg.tau, cfg.bootstrap_resamples, cfg.master_seed, rho_tag(rho));
    row.tv_filtered = tv_to_poisson(row.counts_filtered, cfg.tau);
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.rows.push_back(std::move(row));
  }
  return result;
}

// ----------------------------------------------------------------------------
// Order statistics.

struct OrderStatRow {
  double rho = 0.0;
  std::size_t k = 0;
  double v_rho = 0.0;
  double empirical = 0.0;  // fraction of replications with M^(k) <= v_rho
  double std_error = 0.0;
  double limit = 0.0;      // sum_{r<k} e^{-tau} tau^r / r!
  double empirical_filtered = 0.0;
  std::size_t replications = 0;
};

struct OrderStatResult {
  std::vector<OrderStatRow> rows;
  std::size_t duality_checks = 0;
  double contamination_rate = 0.0;
};

inline OrderStatResult run_order_statistics(const ExperimentConfig& cfg, std::size_t k_max) {
  cfg.validate();
  if (k_max < 1) throw DomainError("run_order_statistics: k_max must be >= 1");
  OrderStatResult out;
  double bad = 0.0, all = 0.0;
  for (double rho : cfg.rho_list) {
    const double v = extremes::threshold_v(rho, cfg.tau, cfg.t);
    const ReplicationSet set =
        run_replications(rho, cfg.t, cfg.margin_for(v), cfg.replications, cfg.master_seed, cfg.threads);
    check_contamination(set);
    for (const auto& r : set.reps) {
      bad += static_cast<double>(extremes::contaminated_count(r));
      all += static_cast<double>(r.records.size());
    }
    const double n = static_cast<double>(cfg.replications);
    for (std::size_t k = 1; k <= k_max; ++k) {
      double below = 0.0, below_filtered = 0.0;
      for (const auto& rs : set.reps) {
        const bool by_order = extremes::order_statistic(rs, k) <= v;
        const bool by_count = extremes::exceedance_count(rs, v) <= k - 1;
        ++out.duality_checks;
        if (by_order != by_count)
          throw SimulationError("order statistic / exceedance duality violated at rho=" + std::to_string(rho) +
                                " k=" + std::to_string(k));
        below += by_order ? 1.0 : 0.0;
        below_filtered += extremes::order_statistic(rs, k, true) <= v ? 1.0 : 0.0;
      }
      OrderStatRow row;
      row.rho = rho;
      row.k = k;
      row.v_rho = v;
      row.empirical = below / n;
      row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / n);
      row.limit = laws::poisson_cdf(cfg.tau, static_cast<long>(k) - 1);
      row.empirical_filtered = below_filtered / n;
      row.replications = cfg.replications;
      out.rows.push_back(row);
    }
  }
  out.contamination_rate = all > 0.0 ? bad / all : 0.0;
  return out;
}

// ----------------------------------------------------------------------------
// Gumbel curve for the maximum inradius.

struct GumbelRow {
  double rho = 0.0;
  double u = 0.0;
  double threshold = 0.0;  // (ln rho + u) / (2t)
  double empirical = 0.0;  // P(M^(1) <= threshold)
  double std_error = 0.0;
  double limit = 0.0;      // exp(-exp(-u))
  std::size_t replications = 0;
};

// One simulation run per rho serves the whole u grid. The automatic margin is
// sized for the largest threshold on the grid.
inline std::vector<GumbelRow> run_gumbel_curve(const ExperimentConfig& cfg, const std::vector<double>& u_grid) {
  if (u_grid.empty()) throw DomainError("run_gumbel_curve: empty u grid");
  for (double u : u_grid)
    if (!std::isfinite(u)) throw DomainError("run_gumbel_curve: non-finite u");
  if (cfg.replications < 1 || !(cfg.t > 0.0) || cfg.rho_list.empty()) throw DomainError("run_gumbel_curve: bad config");
  std::vector<GumbelRow> rows;
  const double u_max = *std::max_element(u_grid.begin(), u_grid.end());
  for (double rho : cfg.rho_list) {
    if (!(rho > 0.0)) throw DomainError("run_gumbel_curve: rho must be positive");
    const double top = (std::log(rho) + u_max) / (2.0 * cfg.t);
    const ReplicationSet set =
        run_replications(rho, cfg.t, cfg.margin_for(top), cfg.replications, cfg.master_seed, cfg.threads);
    check_contamination(set);
    std::vector<double> maxima;
    maxima.reserve(set.reps.size());
    for (const auto& rs : set.reps) maxima.push_back(extremes::order_statistic(rs, 1, cfg.filter_contaminated));
    const double n = static_cast<double>(maxima.size());
    for (double u : u_grid) {
      GumbelRow row;
      row.rho = rho;
      row.u = u;
      row.threshold = (std::log(rho) + u) / (2.0 * cfg.t);
      const double below =
          static_cast<double>(std::count_if(maxima.begin(), maxima.end(), [&](double m) { return m <= row.threshold; }));
      row.empirical = below / n;
      row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / n);
      row.limit = laws::gumbel_limit(u);
      row.replications = cfg.replications;
      rows.push_back(row);
    }
  }
  return rows;
}

// ----------------------------------------------------------------------------
// Typical-cell inradius law, from pooled non-contaminated records.

struct SurvivalPoint {
  double v = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;  // cluster-robust over replications
  double exact = 0.0;      // exp(-2 t v)
};

struct TypicalCheck {
  std::vector<double> sorted_inradii;  // pooled sample (ECDF support)
  std::vector<SurvivalPoint> survival;
  double ks_statistic = 0.0;  // vs Exp(2t)
  double contamination_rate = 0.0;
};

// Survival of pooled inradii at each v, clustered by replication.
inline std::vector<SurvivalPoint> pooled_survival(const std::vector<std::vector<double>>& per_rep, double t,
                                                  const std::vector<double>& v_values) {
  std::vector<SurvivalPoint> out;
  std::vector<double> trials;
  for (const auto& rep : per_rep) trials.push_back(static_cast<double>(rep.size()));
  for (double v : v_values) {
    std::vector<double> hits;
    for (const auto& rep : per_rep)
      hits.push_back(static_cast<double>(std::count_if(rep.begin(), rep.end(), [v](double r) { return r > v; })));
    const stats::Ratio ratio = stats::ratio_estimate(hits, trials);
    out.push_back({v, ratio.value, ratio.std_error, laws::typical_inradius_survival(t, v)});
  }
  return out;
}

inline TypicalCheck run_typical_inradius_check(const ExperimentConfig& cfg, const std::vector<double>& v_values) {
  cfg.validate();
  TypicalCheck out;
  std::vector<std::vector<double>> per_rep;
  double bad = 0.0, all = 0.0;
  for (double rho : cfg.rho_list) {
    const double v = extremes::threshold_v(rho, cfg.tau, cfg.t);
    const ReplicationSet set =
        run_replications(rho, cfg.t, cfg.margin_for(v), cfg.replications, cfg.master_seed, cfg.threads);
    check_contamination(set);
    for (const auto& rs : set.reps) {
      std::vector<double> radii;
      for (const auto& r : rs.records) {
        all += 1.0;
        if (r.contaminated) {
          bad += 1.0;
          continue;
        }
        radii.push_back(r.inradius);
        out.sorted_inradii.push_back(r.inradius);
      }
      per_rep.push_back(std::move(radii));
    }
  }
  std::sort(out.sorted_inradii.begin(), out.sorted_inradii.end());
  out.survival = pooled_survival(per_rep, cfg.t, v_values);
  const double rate = 2.0 * cfg.t;
  out.ks_statistic = stats::ks_statistic(out.sorted_inradii, [rate](double x) { return -std::expm1(-rate * x); });
  out.contamination_rate = all > 0.0 ? bad / all : 0.0;
  return out;
}

// ----------------------------------------------------------------------------
// Two-disk avoidance probability.

struct TwoDiskRow {
  double r = 0.0;
  double d = 0.0;
  double t = 1.0;
  std::size_t replications = 0;
  double empirical = 0.0;  // fraction of runs whose skeleton misses both disks
  double std_error = 0.0;
  double closed_form = 0.0;
  double bound = 0.0;  // eta exp(-2(1 + 2/pi) t r)
};

// Disks of radius r centered at (-d/2, 0) and (d/2, 0), simulated at time t in
// a rectangle leaving one unit of clearance around them. By consistency the
// skeleton inside the rectangle is that of the stationary tessellation.
inline std::vector<TwoDiskRow> run_two_disk_validation(double r, const std::vector<double>& d_list, double t,
                                                       std::size_t replications, std::uint64_t seed,
                                                       unsigned threads = 1) {
  if (!(r > 0.0) || !(t > 0.0)) throw DomainError("run_two_disk_validation: r and t must be positive");
  if (replications < 1) throw DomainError("run_two_disk_validation: replications must be >= 1");
  std::vector<TwoDiskRow> rows;
  for (std::size_t di = 0; di < d_list.size(); ++di) {
    const double d = d_list[di];
    if (d < 2.0 * r) throw DomainError("run_two_disk_validation: requires d >= 2r");
    const Disk left{{-0.5 * d, 0.0}, r};
    const Disk right{{0.5 * d, 0.0}, r};
    const double pad = r + 1.0;
    const ConvexPolygon window = rectangle(-0.5 * d - pad, -pad, 0.5 * d + pad, pad);
    const std::uint32_t tag = kTwoDiskTag ^ rho_tag(d);
    const auto missed = parallel_map(replications, threads, [&](std::size_t rep) {
      RandomStream rng(seed, stream_id(rep, tag));
      const Tessellation tess = simulate(window, t, rng);
      return static_cast<int>(!skeleton_hits(tess, left) && !skeleton_hits(tess, right));
    });
    TwoDiskRow row;
    row.r = r;
    row.d = d;
    row.t = t;
    row.replications = replications;
    double k = 0.0;
    for (int m : missed) k += m;
    const double n = static_cast<double>(replications);
    row.empirical = k / n;
    row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / n);
    row.closed_form = laws::two_disk_avoidance(t * r, t * d);
    row.bound = laws::two_disk_avoidance_bound(t * r);
    rows.push_back(row);
  }
  return rows;
}

// ----------------------------------------------------------------------------
// Cell intensity.

struct IntensityEstimate {
  double density = 0.0;  // cells per unit area
  double std_error = 0.0;
  double exact = 0.0;    // t^2 / pi
  double interior_area = 0.0;
};

// Counts cells with incenter at least `inset` from the boundary of a square of
// side `side` and no boundary contact, per unit area of the inset square.
inline IntensityEstimate run_intensity_check(double side, double t, double inset, std::size_t replications,
                                             std::uint64_t seed, unsigned threads = 1) {
  if (!(side > 2.0 * inset) || inset < 0.0) throw DomainError("run_intensity_check: inset too large");
  const ConvexPolygon window = centered_square(side);
  const ConvexPolygon inner = centered_square(side - 2.0 * inset);
  const double inner_area = inner.area();
  const std::uint32_t tag = kIntensityTag ^ rho_tag(side * t);
  const auto densities = parallel_map(replications, threads, [&](std::size_t rep) {
    RandomStream rng(seed, stream_id(rep, tag));
    const Tessellation tess = simulate(window, t, rng);
    double n = 0.0;
    for (const Cell& c : tess.cells)
      if (!c.touches_sim_boundary && contains(inner, c.incenter)) n += 1.0;
    return n / inner_area;
  });
  return {stats::mean(densities), stats::std_error_of_mean(densities), laws::cell_intensity(t), inner_area};
}

}  // namespace stitx::experiments
