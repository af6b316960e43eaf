#pragma once

#include "maxdisk/geom.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <vector>

namespace maxdisk {

class ArcOwnerMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Right portion T_d: the closed 120-degree sector of `disk` between the radii
/// at -pi/3 and +pi/3.
struct Sector {
  Disk disk;

  bool contains(const Point& p) const noexcept;
  Point apex() const noexcept { return disk.center; }
  Point top_vertex() const noexcept;
  Point bottom_vertex() const noexcept;
};

bool sector_contains(const Disk& d, const Point& p) noexcept;

/// A connected piece of the right arc of `disk`, as the angle interval
/// [lo, hi] within [-pi/3, pi/3]. The arc is y-monotone: y grows with theta.
/// The empty arc is the interval [+inf, -inf].
struct Arc {
  Disk disk;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  static Arc full(const Disk& d) noexcept { return Arc{d, -kThird, kThird}; }
  static Arc none(const Disk& d) noexcept { return Arc{d}; }

  bool empty() const noexcept { return !(lo <= hi); }
  double span() const noexcept { return empty() ? 0.0 : hi - lo; }
  Point point_at(double theta) const noexcept;
  Point lower_endpoint() const noexcept { return point_at(lo); }
  Point upper_endpoint() const noexcept { return point_at(hi); }
  double length() const noexcept { return span() * disk.radius; }
};

/// The set of surviving arcs of one frame; at most one arc per disk, sorted by
/// disk id. Disks live in the (rotated) coordinates of `frame`.
struct ArcMap {
  Frame frame = Frame::Right;
  std::vector<Arc> arcs;
};

/// Up to two arcs ordered bottom to top.
struct ArcComponents {
  std::array<Arc, 2> items{};
  int count = 0;

  const Arc* begin() const noexcept { return items.data(); }
  const Arc* end() const noexcept { return items.data() + count; }
  bool empty() const noexcept { return count == 0; }
  int size() const noexcept { return count; }
  const Arc& operator[](int i) const noexcept { return items[static_cast<std::size_t>(i)]; }
};

Arc right_arc(const Disk& d) noexcept;

/// Components of `a` minus the closed sector `s`, ordered by angle. Components
/// shorter than tol.geom in angle are dropped.
ArcComponents subtract_sector(const Arc& a, const Sector& s,
                              const Tolerance& tol = kDefaultTolerance);

/// A_d^{d2} intersected with `a`: Rule 1 keeps the single component of
/// A_d \ T_d2; Rule 2 keeps the top component when d is higher than d2, the
/// bottom one otherwise. Requires d2.radius > d.radius.
Arc apply_rule(const Arc& a, const Disk& d, const Disk& d2,
               const Tolerance& tol = kDefaultTolerance);

/// The second point of the right arc of `owner` on the vertical line through
/// `p`. Throws DegenerateInput when p is the middle of the arc.
Point conjugate_point(const Point& p, const Disk& owner, const Tolerance& tol = kDefaultTolerance);

/// Interval intersection; throws ArcOwnerMismatch for arcs of different disks.
Arc intersect_arcs(const Arc& a, const Arc& b);

/// Empties arcs shorter than tol.geom in angle.
Arc drop_sliver(const Arc& a, const Tolerance& tol = kDefaultTolerance) noexcept;

/// Rightward horizontal distance to a set: the smallest x - p.x over points
/// (x, p.y) of the set with x >= p.x; +inf when the rightward ray misses.
double dist_x(const Point& p, const Sector& s);
double dist_x(const Point& p, const Arc& a);

/// Angle on the right arc of d at height y (clamped to the arc's range).
double arc_angle_at_y(const Disk& d, double y) noexcept;

}  // namespace maxdisk
