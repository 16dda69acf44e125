#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stitx/error.hpp"

namespace stitx {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Line {x : <(cos phi, sin phi), x> = p} with phi in [0, pi).
struct Line {
  double phi = 0.0;
  double p = 0.0;

  // Folds an arbitrary (angle, offset) pair onto the unique chart representative.
  static Line normalized(double phi, double p) {
    constexpr double pi = std::numbers::pi;
    phi = std::fmod(phi, 2.0 * pi);
    if (phi < 0.0) phi += 2.0 * pi;
    if (phi >= pi) {
      phi -= pi;
      p = -p;
    }
    if (phi >= pi) phi = 0.0;  // fmod rounding at exactly 2*pi
    return {phi, p};
  }

  Point normal() const { return {std::cos(phi), std::sin(phi)}; }
  Point direction() const { return {-std::sin(phi), std::cos(phi)}; }
  double signed_distance(Point q) const { return dot(normal(), q) - p; }

  friend bool operator==(const Line&, const Line&) = default;
};

enum class Side { positive, negative };

struct Segment {
  Point a;
  Point b;
  double length() const { return distance(a, b); }
};

struct Disk {
  Point center;
  double radius = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

namespace detail {

inline double signed_area2(std::span<const Point> v) {
  double s = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return s;
}

inline double characteristic_length(std::span<const Point> v) {
  double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y, amax = 0.0;
  for (const Point& q : v) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
    amax = std::max({amax, std::abs(q.x), std::abs(q.y)});
  }
  return std::max(std::hypot(xmax - xmin, ymax - ymin), amax);
}

}  // namespace detail

// Relative tolerance for collinearity and degeneracy decisions.
inline constexpr double kGeomRelTol = 1e-9;

// Convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  // Validates orientation, convexity, finiteness and positive area.
  explicit ConvexPolygon(std::vector<Point> ccw) : v_(std::move(ccw)) { validate(); }

  // Skips validation; for vertex lists produced by the kernel itself.
  static ConvexPolygon trusted(std::vector<Point> ccw) {
    ConvexPolygon poly;
    poly.v_ = std::move(ccw);
    return poly;
  }

  std::span<const Point> vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Point& operator[](std::size_t i) const { return v_[i]; }

  double area() const { return 0.5 * detail::signed_area2(v_); }

  double perimeter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += distance(v_[i], v_[(i + 1) % v_.size()]);
    return s;
  }

  double characteristic_length() const { return detail::characteristic_length(v_); }
  double tolerance() const { return kGeomRelTol * characteristic_length(); }

  Point vertex_mean() const {
    Point c;
    for (const Point& q : v_) c = c + q;
    return (1.0 / static_cast<double>(v_.size())) * c;
  }

  // Smallest axis-aligned box, as {lower-left, upper-right}.
  std::pair<Point, Point> bounding_box() const {
    Point lo = v_[0], hi = v_[0];
    for (const Point& q : v_) {
      lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
      hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
    }
    return {lo, hi};
  }

  // Disk centered at the bounding-box center through the farthest vertex.
  Disk circumscribed_disk() const {
    const auto [lo, hi] = bounding_box();
    const Point c = 0.5 * (lo + hi);
    double r = 0.0;
    for (const Point& q : v_) r = std::max(r, distance(c, q));
    return {c, r};
  }

  Segment edge(std::size_t i) const { return {v_[i], v_[(i + 1) % v_.size()]}; }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  ConvexPolygon() = default;

  void validate() const {
    const std::size_t n = v_.size();
    if (n < 3) throw GeometryError("convex polygon needs at least 3 vertices");
    for (const Point& q : v_)
      if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw GeometryError("non-finite vertex");
    const double eps = tolerance();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = v_[i], b = v_[(i + 1) % n], c = v_[(i + 2) % n];
      if (distance(a, b) <= eps) throw GeometryError("repeated vertex");
      if (cross(b - a, c - b) < -eps * distance(a, b))
        throw GeometryError("vertices are not convex in counterclockwise order");
    }
    if (area() <= eps * eps) throw GeometryError("polygon has no positive area");
  }

  std::vector<Point> v_;
};

// ----------------------------------------------------------------------------
// Constructors for common shapes.

inline ConvexPolygon rectangle(double xmin, double ymin, double xmax, double ymax) {
  return ConvexPolygon({{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}});
}

inline ConvexPolygon centered_square(double side, Point center = {}) {
  const double h = 0.5 * side;
  return rectangle(center.x - h, center.y - h, center.x + h, center.y + h);
}

inline ConvexPolygon regular_polygon(int n, double circumradius, Point center = {}, double phase = 0.0) {
  if (n < 3) throw DomainError("regular polygon needs n >= 3");
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / n;
    v.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
  }
  return ConvexPolygon(std::move(v));
}

inline ConvexPolygon transformed(const ConvexPolygon& poly, double factor, Point shift = {}) {
  std::vector<Point> v;
  v.reserve(poly.size());
  for (const Point& q : poly.vertices()) v.push_back(factor * q + shift);
  return ConvexPolygon::trusted(std::move(v));
}

// ----------------------------------------------------------------------------
// Measurements.

inline double perimeter(const ConvexPolygon& poly) { return poly.perimeter(); }
inline double area(const ConvexPolygon& poly) { return poly.area(); }

inline Interval projection_interval(const ConvexPolygon& poly, double phi) {
  const Point n{std::cos(phi), std::sin(phi)};
  Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& q : poly.vertices()) {
    const double s = dot(n, q);
    iv.lo = std::min(iv.lo, s);
    iv.hi = std::max(iv.hi, s);
  }
  return iv;
}

inline bool hits(const ConvexPolygon& poly, const Line& line) {
  return projection_interval(poly, line.phi).contains(line.p);
}

// Unit outward normal of edge i.
inline Point outward_normal(const ConvexPolygon& poly, std::size_t i) {
  const Segment e = poly.edge(i);
  const Point d = e.b - e.a;
  const double len = norm(d);
  return {d.y / len, -d.x / len};
}

// Minimum over edges of the inward distance from pt to the edge's supporting
// line. Positive inside, zero on the boundary, negative outside.
inline double inner_distance(const ConvexPolygon& poly, Point pt) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point n = outward_normal(poly, i);
    best = std::min(best, dot(n, poly[i] - pt));
  }
  return best;
}

// Closed-set membership with tolerance.
inline bool contains(const ConvexPolygon& poly, Point pt) {
  return inner_distance(poly, pt) >= -poly.tolerance();
}

inline bool contains(const ConvexPolygon& outer, const ConvexPolygon& inner) {
  const double eps = std::max(outer.tolerance(), inner.tolerance());
  for (const Point& q : inner.vertices())
    if (inner_distance(outer, q) < -eps) return false;
  return true;
}

// Smallest distance from any vertex of `inner` to the boundary of `outer`;
// for inner contained in outer this is the largest m with inner + [-m,m]^2-ish
// clearance in every edge-normal direction.
inline double clearance(const ConvexPolygon& outer, const ConvexPolygon& inner) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : inner.vertices()) best = std::min(best, inner_distance(outer, q));
  return best;
}

// True iff some vertex of `poly` lies within tolerance of the boundary of `window`.
inline bool touches_boundary(const ConvexPolygon& poly, const ConvexPolygon& window) {
  const double eps = window.tolerance();
  for (const Point& q : poly.vertices())
    if (std::abs(inner_distance(window, q)) <= eps) return true;
  return false;
}

// ----------------------------------------------------------------------------
// Clipping.

namespace detail {

// Removes consecutive near-duplicates and reports whether the remaining ring
// is a polygon of non-negligible area.
inline std::optional<ConvexPolygon> finish_clip(std::vector<Point> out, double eps) {
  std::vector<Point> ring;
  ring.reserve(out.size());
  for (const Point& q : out)
    if (ring.empty() || distance(ring.back(), q) > eps) ring.push_back(q);
  while (ring.size() > 1 && distance(ring.front(), ring.back()) <= eps) ring.pop_back();
  if (ring.size() < 3) return std::nullopt;
  if (0.5 * signed_area2(ring) < eps * eps) return std::nullopt;
  return ConvexPolygon::trusted(std::move(ring));
}

// Signed offsets <n, v> - c of the vertices, snapped to zero within eps.
inline std::vector<double> snapped_offsets(const ConvexPolygon& poly, Point n, double c, double eps) {
  std::vector<double> s(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double d = dot(n, poly[i]) - c;
    s[i] = std::abs(d) <= eps ? 0.0 : d;
  }
  return s;
}

inline std::vector<Point> clip_ring(const ConvexPolygon& poly, std::span<const double> s, double sign) {
  std::vector<Point> out;
  out.reserve(poly.size() + 2);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double si = sign * s[i], sj = sign * s[j];
    if (si >= 0.0) out.push_back(poly[i]);
    if ((si > 0.0 && sj < 0.0) || (si < 0.0 && sj > 0.0)) {
      // Same expression for both sides so split parts share the cut vertex bitwise.
      const double t = s[i] / (s[i] - s[j]);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  return out;
}

}  // namespace detail

// poly intersected with the closed half-plane on `side` of `line`; nullopt
// when the intersection has (numerically) zero area.
inline std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const Line& line, Side side) {
  const double eps = poly.tolerance();
  const auto s = detail::snapped_offsets(poly, line.normal(), line.p, eps);
  return detail::finish_clip(detail::clip_ring(poly, s, side == Side::positive ? 1.0 : -1.0), eps);
}

struct SplitResult {
  std::optional<ConvexPolygon> positive;
  std::optional<ConvexPolygon> negative;
};

inline SplitResult split(const ConvexPolygon& poly, const Line& line) {
  const double eps = poly.tolerance();
  const auto s = detail::snapped_offsets(poly, line.normal(), line.p, eps);
  return {detail::finish_clip(detail::clip_ring(poly, s, 1.0), eps),
          detail::finish_clip(detail::clip_ring(poly, s, -1.0), eps)};
}

// Intersection of two convex polygons, clipping edge by edge of `window`.
inline std::optional<ConvexPolygon> intersect(const ConvexPolygon& poly, const ConvexPolygon& window) {
  std::optional<ConvexPolygon> cur = poly;
  for (std::size_t i = 0; i < window.size() && cur; ++i) {
    const Point n = outward_normal(window, i);
    const double eps = cur->tolerance();
    const auto s = detail::snapped_offsets(*cur, n, dot(n, window[i]), eps);
    cur = detail::finish_clip(detail::clip_ring(*cur, s, -1.0), eps);
  }
  return cur;
}

// Cyrus-Beck clip of a segment to a convex polygon.
inline std::optional<Segment> clip_segment(const ConvexPolygon& poly, const Segment& seg) {
  double t0 = 0.0, t1 = 1.0;
  const Point d = seg.b - seg.a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point n = outward_normal(poly, i);
    const double num = dot(n, poly[i] - seg.a);  // need dot(n, a + t d) <= dot(n, v_i)
    const double den = dot(n, d);
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = num / den;
    if (den > 0.0)
      t1 = std::min(t1, t);
    else
      t0 = std::max(t0, t);
    if (t0 > t1) return std::nullopt;
  }
  Segment out{seg.a + t0 * d, seg.a + t1 * d};
  if (out.length() <= poly.tolerance()) return std::nullopt;
  return out;
}

// The chord line ∩ poly, nullopt if the line misses (or only grazes) poly.
inline std::optional<Segment> chord(const ConvexPolygon& poly, const Line& line) {
  const Point n = line.normal();
  const Point d = line.direction();
  const Point origin = line.p * n;
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point en = outward_normal(poly, i);
    const double num = dot(en, poly[i] - origin);
    const double den = dot(en, d);
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = num / den;
    if (den > 0.0)
      t1 = std::min(t1, t);
    else
      t0 = std::max(t0, t);
  }
  if (!(t0 < t1)) return std::nullopt;
  Segment out{origin + t0 * d, origin + t1 * d};
  if (out.length() <= poly.tolerance()) return std::nullopt;
  return out;
}

inline double distance_point_segment(Point q, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(q, s.a);
  const double t = std::clamp(dot(q - s.a, d) / len2, 0.0, 1.0);
  return distance(q, s.a + t * d);
}

// ----------------------------------------------------------------------------
// Incircle (Chebyshev center).
//
// maximize r  s.t.  <n_e, x> + r <= <n_e, a_e>  for every edge e
//
// with unit outward normals n_e. Solved by a dictionary simplex in the three
// structural unknowns (x, y, r) around the vertex mean, which is strictly
// feasible. Structural unknowns are free; slacks are nonnegative. Bland's rule
// gives deterministic pivoting and excludes cycling.

struct Incircle {
  Point center;
  double radius = 0.0;
  // |det| of the 3x3 matrix [n_e, 1] over the three tight edges; near zero
  // when the optimum is ill-conditioned (near-parallel supporting edges).
  double conditioning = 0.0;
};

inline Incircle incircle(const ConvexPolygon& poly) {
  const std::size_t m = poly.size();
  if (m < 3) throw GeometryError("incircle: polygon has fewer than 3 edges");
  const Point origin = poly.vertex_mean();

  constexpr std::size_t kStructural = 3;
  std::vector<Point> normals(m);
  std::vector<std::size_t> basic(m);
  std::vector<double> value(m);
  std::vector<std::array<double, kStructural>> coef(m);
  for (std::size_t e = 0; e < m; ++e) {
    normals[e] = outward_normal(poly, e);
    if (!std::isfinite(normals[e].x) || !std::isfinite(normals[e].y))
      throw GeometryError("incircle: degenerate edge");
    basic[e] = kStructural + e;
    value[e] = dot(normals[e], poly[e] - origin);
    if (!(value[e] > 0.0)) throw GeometryError("incircle: vertex mean not interior (invalid polygon)");
    coef[e] = {-normals[e].x, -normals[e].y, -1.0};
  }
  std::array<std::size_t, kStructural> nonbasic{0, 1, 2};
  std::array<double, kStructural> obj{0.0, 0.0, 1.0};
  double obj_value = 0.0;

  constexpr double kCoefTol = 1e-12;
  const std::size_t max_iter = 64 + 8 * m;
  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter > max_iter) throw GeometryError("incircle: simplex iteration limit");
    // Entering column: smallest variable id with an improving direction.
    std::size_t enter = kStructural;
    for (std::size_t j = 0; j < kStructural; ++j) {
      const bool free_var = nonbasic[j] < kStructural;
      const bool improves = obj[j] > kCoefTol || (free_var && obj[j] < -kCoefTol);
      if (improves && (enter == kStructural || nonbasic[j] < nonbasic[enter])) enter = j;
    }
    if (enter == kStructural) break;
    const double sigma = obj[enter] > 0.0 ? 1.0 : -1.0;

    // Ratio test over nonnegative basic variables (slacks).
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (basic[i] < kStructural) continue;
      const double rate = sigma * coef[i][enter];
      if (rate >= -kCoefTol) continue;
      const double limit = std::max(value[i], 0.0) / -rate;
      if (leave == m || limit < best || (limit == best && basic[i] < basic[leave])) {
        best = limit;
        leave = i;
      }
    }
    if (leave == m) throw GeometryError("incircle: unbounded (polygon not closed)");

    // Pivot: the entering variable becomes basic in row `leave`.
    const double pivot = coef[leave][enter];
    const std::size_t leaving_var = basic[leave];
    std::array<double, kStructural> prow{};
    for (std::size_t q = 0; q < kStructural; ++q) prow[q] = q == enter ? 1.0 / pivot : -coef[leave][q] / pivot;
    const double pval = -value[leave] / pivot;
    value[leave] = pval;
    coef[leave] = prow;
    basic[leave] = nonbasic[enter];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double a = coef[i][enter];
      if (a == 0.0) continue;
      value[i] += a * pval;
      for (std::size_t q = 0; q < kStructural; ++q) coef[i][q] = q == enter ? a * prow[q] : coef[i][q] + a * prow[q];
    }
    const double c = obj[enter];
    obj_value += c * pval;
    for (std::size_t q = 0; q < kStructural; ++q) obj[q] = q == enter ? c * prow[q] : obj[q] + c * prow[q];
    nonbasic[enter] = leaving_var;
  }

  std::array<double, kStructural> sol{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < kStructural) sol[basic[i]] = value[i];

  Incircle out{{origin.x + sol[0], origin.y + sol[1]}, sol[2], 0.0};
  if (!(out.radius > 0.0)) throw GeometryError("incircle: non-positive radius");
  if (nonbasic[0] >= kStructural && nonbasic[1] >= kStructural && nonbasic[2] >= kStructural) {
    const Point a = normals[nonbasic[0] - kStructural];
    const Point b = normals[nonbasic[1] - kStructural];
    const Point c = normals[nonbasic[2] - kStructural];
    out.conditioning = std::abs(cross(b - a, c - a));
  }
  return out;
}

}  // namespace stitx
