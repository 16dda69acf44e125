#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "stitx/error.hpp"
#include "stitx/geometry.hpp"
#include "stitx/linemeasure.hpp"
#include "stitx/random.hpp"

namespace stitx {

struct Cell {
  ConvexPolygon polygon;
  Point incenter;
  double inradius = 0.0;
  double birth_time = 0.0;
  bool touches_sim_boundary = false;
};

// Chord cut out of a cell by its dividing line (I-segment).
struct MaximalSegment {
  Segment segment;
  Line line;
  double birth_time = 0.0;
};

// State of the STIT process restricted to `sim_window` at time `t_final`.
struct Tessellation {
  double t_final = 0.0;
  ConvexPolygon sim_window;
  std::vector<Cell> cells;
  std::vector<MaximalSegment> segments;
};

struct SimulationLimits {
  std::size_t max_cells = 100'000'000;
  int max_split_attempts = 100;
};

inline Cell make_cell(ConvexPolygon poly, double birth, const ConvexPolygon& window) {
  const Incircle ic = incircle(poly);
  const bool boundary = touches_boundary(poly, window);
  return {std::move(poly), ic.center, ic.radius, birth, boundary};
}

// Runs the division process in `window` up to time t.
//
// Every live cell z carries an exponential clock of rate Lambda([z]) =
// perimeter(z)/pi. Clocks live in one min-queue keyed on (division time, cell
// id); by memorylessness this is the same as independent per-cell clocks.
// When a clock rings the cell is cut by a line drawn from the normalized
// measure on lines hitting it, and both daughters start fresh clocks at the
// division time. Cells whose clock exceeds t are final.
//
// Random draws happen in a fixed order (parent line, positive daughter clock,
// negative daughter clock), so the result is a function of (window, t, rng).
inline Tessellation simulate(const ConvexPolygon& window, double t, RandomStream& rng,
                             const SimulationLimits& limits = {}) {
  if (!(t > 0.0)) throw DomainError("simulate: t must be positive");

  struct Pending {
    std::optional<ConvexPolygon> poly;  // reset once divided
    double birth = 0.0;
  };
  using Event = std::pair<double, std::size_t>;
  std::vector<Pending> pool;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> clocks;
  std::vector<MaximalSegment> segments;
  std::size_t alive = 0;

  auto spawn = [&](ConvexPolygon poly, double birth) {
    const double when = birth + rng.exponential(linemeasure::lambda_hitting(poly));
    const std::size_t id = pool.size();
    pool.push_back({std::move(poly), birth});
    ++alive;
    if (when <= t) clocks.emplace(when, id);
  };

  spawn(window, 0.0);
  while (!clocks.empty()) {
    const auto [when, id] = clocks.top();
    clocks.pop();
    const ConvexPolygon parent = std::move(*pool[id].poly);
    pool[id].poly.reset();

    std::optional<SplitResult> parts;
    std::optional<Segment> cut;
    Line line;
    for (int attempt = 0; attempt < limits.max_split_attempts; ++attempt) {
      line = linemeasure::sample_hitting_line(parent, rng);
      SplitResult sr = split(parent, line);
      if (!sr.positive || !sr.negative) continue;
      cut = chord(parent, line);
      if (!cut) continue;
      parts = std::move(sr);
      break;
    }
    if (!parts)
      throw SimulationError("simulate: degenerate split repeated " + std::to_string(limits.max_split_attempts) +
                            " times at t=" + std::to_string(when));

    segments.push_back({*cut, line, when});
    --alive;
    spawn(std::move(*parts->positive), when);
    spawn(std::move(*parts->negative), when);
    if (alive > limits.max_cells)
      throw SimulationError("simulate: more than " + std::to_string(limits.max_cells) +
                            " cells; window or t mis-scaled? (window perimeter " +
                            std::to_string(window.perimeter()) + ", t " + std::to_string(t) + ")");
  }

  Tessellation tess{t, window, {}, std::move(segments)};
  tess.cells.reserve(alive);
  for (Pending& p : pool)
    if (p.poly) tess.cells.push_back(make_cell(std::move(*p.poly), p.birth, window));
  return tess;
}

// Multiplies every coordinate by `factor`; times are left untouched.
inline Tessellation scale(const Tessellation& tess, double factor) {
  if (!(factor > 0.0)) throw DomainError("scale: factor must be positive");
  Tessellation out{tess.t_final, transformed(tess.sim_window, factor), {}, {}};
  out.cells.reserve(tess.cells.size());
  for (const Cell& c : tess.cells)
    out.cells.push_back({transformed(c.polygon, factor), factor * c.incenter, factor * c.inradius, c.birth_time,
                         c.touches_sim_boundary});
  out.segments.reserve(tess.segments.size());
  for (const MaximalSegment& s : tess.segments)
    out.segments.push_back({{factor * s.segment.a, factor * s.segment.b},
                            Line{s.line.phi, factor * s.line.p},
                            s.birth_time});
  return out;
}

// Restriction to a convex sub-window: cells are clipped, empty fragments
// dropped, incircles recomputed and boundary contact re-flagged.
inline Tessellation restrict(const Tessellation& tess, const ConvexPolygon& sub_window) {
  if (!contains(tess.sim_window, sub_window)) throw DomainError("restrict: sub-window not inside simulation window");
  Tessellation out{tess.t_final, sub_window, {}, {}};
  for (const Cell& c : tess.cells) {
    auto piece = intersect(c.polygon, sub_window);
    if (piece) out.cells.push_back(make_cell(std::move(*piece), c.birth_time, sub_window));
  }
  for (const MaximalSegment& s : tess.segments) {
    auto piece = clip_segment(sub_window, s.segment);
    if (piece) out.segments.push_back({*piece, s.line, s.birth_time});
  }
  return out;
}

// True iff some maximal segment meets the closed disk.
inline bool skeleton_hits(const Tessellation& tess, const Disk& disk) {
  for (const MaximalSegment& s : tess.segments)
    if (distance_point_segment(disk.center, s.segment) <= disk.radius) return true;
  return false;
}

}  // namespace stitx
