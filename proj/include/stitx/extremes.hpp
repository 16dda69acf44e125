#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "stitx/error.hpp"
#include "stitx/geometry.hpp"
#include "stitx/stit.hpp"

namespace stitx::extremes {

// Square of area pi * rho / t^2 centered at the origin.
struct ObservationWindow {
  double rho = 0.0;
  double t = 0.0;
  ConvexPolygon square;

  double side() const { return std::sqrt(std::numbers::pi * rho) / t; }
};

inline ObservationWindow build_window(double rho, double t) {
  if (!(rho > 0.0) || !(t > 0.0)) throw DomainError("build_window: rho and t must be positive");
  const double side = std::sqrt(std::numbers::pi * rho) / t;
  return {rho, t, centered_square(side)};
}

// Threshold v with rho * exp(-2 t v) = tau. Negative when tau > rho.
inline double threshold_v(double rho, double tau, double t) {
  if (!(rho > 0.0) || !(tau > 0.0) || !(t > 0.0)) throw DomainError("threshold_v: rho, tau, t must be positive");
  return (std::log(rho) - std::log(tau)) / (2.0 * t);
}

// Margin added around the observation window: 4 v + 2 length units.
inline double default_margin(double rho, double tau, double t) {
  return 4.0 * std::max(0.0, threshold_v(rho, tau, t)) + 2.0;
}

inline ConvexPolygon simulation_window(const ObservationWindow& w, double margin) {
  if (margin < 0.0) throw DomainError("simulation_window: negative margin");
  return centered_square(w.side() + 2.0 * margin);
}

struct InradiusRecord {
  Point incenter;
  double inradius = 0.0;
  bool contaminated = false;
};

struct InradiusRecordSet {
  std::vector<InradiusRecord> records;
  ObservationWindow window;
  double margin = 0.0;
};

// One record per cell whose incenter lies in the (closed) observation square.
inline InradiusRecordSet collect_records(const Tessellation& tess, const ObservationWindow& window) {
  if (!contains(tess.sim_window, window.square))
    throw DomainError("collect_records: observation window not covered by the simulation window");
  InradiusRecordSet out{{}, window, clearance(tess.sim_window, window.square)};
  for (const Cell& c : tess.cells)
    if (contains(window.square, c.incenter))
      out.records.push_back({c.incenter, c.inradius, c.touches_sim_boundary});
  return out;
}

inline std::size_t exceedance_count(const InradiusRecordSet& set, double v, bool skip_contaminated = false) {
  return static_cast<std::size_t>(std::count_if(set.records.begin(), set.records.end(), [&](const InradiusRecord& r) {
    return r.inradius > v && !(skip_contaminated && r.contaminated);
  }));
}

// k-th largest inradius, 0 with fewer than k records.
inline double order_statistic(const InradiusRecordSet& set, std::size_t k, bool skip_contaminated = false) {
  if (k < 1) throw DomainError("order_statistic: k must be >= 1");
  std::vector<double> radii;
  radii.reserve(set.records.size());
  for (const InradiusRecord& r : set.records)
    if (!(skip_contaminated && r.contaminated)) radii.push_back(r.inradius);
  if (radii.size() < k) return 0.0;
  std::nth_element(radii.begin(), radii.begin() + static_cast<std::ptrdiff_t>(k - 1), radii.end(), std::greater<>());
  return radii[k - 1];
}

inline std::size_t contaminated_count(const InradiusRecordSet& set) {
  return static_cast<std::size_t>(
      std::count_if(set.records.begin(), set.records.end(), [](const InradiusRecord& r) { return r.contaminated; }));
}

// Simulates on the observation window grown by `margin` and collects its records.
inline InradiusRecordSet simulate_records(const ObservationWindow& window, double margin, RandomStream& rng) {
  const Tessellation tess = simulate(simulation_window(window, margin), window.t, rng);
  return collect_records(tess, window);
}

}  // namespace stitx::extremes
