#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "stitx/error.hpp"
#include "stitx/geometry.hpp"
#include "stitx/random.hpp"

// Motion-invariant measure on planar lines, normalized so that the lines
// hitting the unit disk have mass 2. In the (phi, p) chart it reads
// (1/pi) dp dphi on [0, pi) x R.
namespace stitx::linemeasure {

// Mass of the lines hitting a convex polygon: perimeter / pi.
inline double lambda_hitting(const ConvexPolygon& poly) { return poly.perimeter() / std::numbers::pi; }

// Mass of the lines hitting a disk of radius r: 2r.
inline double lambda_hitting_disk(double r) { return 2.0 * r; }

inline constexpr long kMaxRejections = 1'000'000;

// Line drawn from the normalized restriction of the measure to the lines
// hitting `poly`. Rejection against the circumscribed disk: uniform direction,
// uniform offset over the disk's support, accept iff the line hits `poly`.
// `attempts`, if given, accumulates the number of proposals drawn.
inline Line sample_hitting_line(const ConvexPolygon& poly, RandomStream& rng, long* attempts = nullptr) {
  const Disk disk = poly.circumscribed_disk();
  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    if (attempts) ++*attempts;
    double phi = std::numbers::pi * rng.uniform();
    if (phi >= std::numbers::pi) phi = 0.0;
    const Point n{std::cos(phi), std::sin(phi)};
    const double p = dot(n, disk.center) + disk.radius * (2.0 * rng.uniform() - 1.0);
    if (projection_interval(poly, phi).contains(p)) return {phi, p};
  }
  throw GeometryError("sample_hitting_line: rejection cap exceeded (degenerate polygon?)");
}

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int max_depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Mass of the lines separating two disks of radius r whose centers are d apart:
//   (1/pi) * int_0^pi max(0, d |cos phi| - 2r) dphi.
// The integrand vanishes outside [0, phi*] u [pi - phi*, pi], phi* = acos(2r/d);
// the quadrature runs on those pieces only so no kink sits inside a panel.
inline double lambda_separating_disks(double r, double d) {
  if (!(r > 0.0)) throw DomainError("lambda_separating_disks: r must be positive");
  if (d < 2.0 * r) throw DomainError("lambda_separating_disks: disks overlap (d < 2r)");
  const double kink = std::acos(std::min(1.0, 2.0 * r / d));
  if (kink == 0.0) return 0.0;
  auto gap = [r, d](double phi) { return std::max(0.0, d * std::abs(std::cos(phi)) - 2.0 * r); };
  constexpr double kTol = 1e-8;
  const double pi = std::numbers::pi;
  const double mass = adaptive_simpson(gap, 0.0, kink, 0.25 * kTol) + adaptive_simpson(gap, pi - kink, pi, 0.25 * kTol);
  return mass / pi;
}

// Mass of the lines hitting the convex hull of two radius-r disks d apart.
inline double lambda_conv_two_disks(double r, double d) {
  if (!(r > 0.0) || d < 0.0) throw DomainError("lambda_conv_two_disks: need r > 0, d >= 0");
  return 2.0 * r + 2.0 * d / std::numbers::pi;
}

}  // namespace stitx::linemeasure
