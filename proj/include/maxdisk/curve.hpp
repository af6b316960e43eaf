#pragma once

#include "maxdisk/arcs.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace maxdisk {

/// A y-monotone boundary piece x = f(y) over [y_lo, y_hi]: either a straight
/// segment x = cx + slope * (y - cy) or a piece of the right half of the
/// circle (cx, cy, r), x = cx + sqrt(r^2 - (y - cy)^2).
///
/// Every edge that appears in this library is of one of these two forms: the
/// radii of a right portion have dx/dy = +-1/sqrt(3), and right arcs never
/// leave the right half of their circle.
struct Curve {
  enum class Kind : std::uint8_t { Segment, Arc };

  Kind kind = Kind::Arc;
  bool interior_right = false;  // side of the owning region, for union edges
  std::int32_t source = -1;     // caller-defined owner index
  double y_lo = 0.0;
  double y_hi = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;  // radius for arcs, dx/dy for segments

  double x_at(double y) const noexcept {
    y = y < y_lo ? y_lo : (y > y_hi ? y_hi : y);
    if (kind == Kind::Segment) return cx + r * (y - cy);
    const double v = y - cy;
    const double w = r * r - v * v;
    return cx + std::sqrt(w > 0.0 ? w : 0.0);
  }

  /// dx/dy at y.
  double slope_at(double y) const noexcept {
    if (kind == Kind::Segment) return r;
    const double v = y - cy;
    const double w2 = r * r - v * v;
    const double w = std::sqrt(w2 > 1e-300 ? w2 : 1e-300);
    return -v / w;
  }

  double height() const noexcept { return y_hi - y_lo; }

  /// Piece of the same curve restricted to [lo, hi].
  Curve clipped(double lo, double hi) const noexcept {
    Curve c = *this;
    c.y_lo = lo;
    c.y_hi = hi;
    return c;
  }

  /// Reflection through the x-axis (y -> -y).
  Curve mirrored() const noexcept {
    Curve c = *this;
    c.y_lo = -y_hi;
    c.y_hi = -y_lo;
    c.cy = -cy;
    if (kind == Kind::Segment) c.r = -r;
    return c;
  }
};

/// The right arc piece of an Arc as a curve; `source` is left to the caller.
Curve arc_curve(const Arc& a) noexcept;

/// The three boundary edges of the right portion of d: bottom radius, top
/// radius and arc, tagged with `source`.
std::array<Curve, 3> sector_edges(const Disk& d, std::int32_t source);

struct CurveCrossings {
  std::array<double, 2> y{};
  int count = 0;
  bool tangent = false;  // two roots closer than the tolerance
};

/// y-coordinates, ascending, where the two curves meet inside their common
/// y-range. `tol` separates transversal double roots from tangencies.
CurveCrossings intersect_curves(const Curve& a, const Curve& b, double tol = 1e-9);

/// Signed integral of x dy over the curve (for area computations).
double integral_x_dy(const Curve& c) noexcept;

}  // namespace maxdisk
