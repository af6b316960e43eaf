#include "maxdisk/arcs.hpp"

#include <algorithm>
#include <cmath>

namespace maxdisk {

namespace {

constexpr double kHalfSqrt3 = kSqrt3 / 2.0;

struct Breakpoints {
  std::array<double, 8> t{};
  int n = 0;
  void add(double v) {
    if (n < static_cast<int>(t.size())) t[static_cast<std::size_t>(n++)] = v;
  }
};

// Angles on d's circle where it meets a radius of `s` (segment from the apex
// at orientation phi, of length s.radius).
void radius_breaks(const Disk& d, const Disk& s, double phi, double lo, double hi,
                   const Tolerance& tol, Breakpoints& out) {
  const Point u(std::cos(phi), std::sin(phi));
  const Point w = s.center - d.center;
  const double b = u.dot(w);
  const double c = w.squaredNorm() - d.radius * d.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double roots[2] = {-b - sq, -b + sq};
  const bool tangent = sq <= tol.geom;
  for (double t : roots) {
    if (t < -tol.geom || t > s.radius + tol.geom) continue;
    const Point p = s.center + t * u - d.center;
    const double theta = std::atan2(p.y(), p.x());
    if (theta <= lo || theta >= hi) continue;
    if (tangent) {
      throw DegenerateInput("right arc of disk " + std::to_string(d.id) +
                            " is tangent to a radius of disk " + std::to_string(s.id));
    }
    out.add(theta);
  }
}

}  // namespace

bool sector_contains(const Disk& d, const Point& p) noexcept {
  const double vx = p.x() - d.center.x();
  const double vy = p.y() - d.center.y();
  return vx * vx + vy * vy <= d.radius * d.radius && std::abs(vy) <= kSqrt3 * vx;
}

bool Sector::contains(const Point& p) const noexcept { return sector_contains(disk, p); }

Point Sector::top_vertex() const noexcept {
  return disk.center + disk.radius * Point(0.5, kHalfSqrt3);
}

Point Sector::bottom_vertex() const noexcept {
  return disk.center + disk.radius * Point(0.5, -kHalfSqrt3);
}

Point Arc::point_at(double theta) const noexcept {
  return disk.center + disk.radius * Point(std::cos(theta), std::sin(theta));
}

Arc right_arc(const Disk& d) noexcept { return Arc::full(d); }

ArcComponents subtract_sector(const Arc& a, const Sector& s, const Tolerance& tol) {
  ArcComponents out;
  if (a.empty()) return out;
  const Disk& d = a.disk;
  const Disk& sd = s.disk;

  // Quick rejects: disjoint circles, or the sector lies strictly right of the arc.
  const double reach = d.radius + sd.radius;
  if ((sd.center - d.center).squaredNorm() > reach * reach ||
      sd.center.x() > d.center.x() + d.radius) {
    out.items[0] = a;
    out.count = 1;
    return out;
  }

  Breakpoints br;
  const CircleIntersection cc = circle_circle_intersections(d, sd, tol.geom);
  for (int i = 0; i < cc.count; ++i) {
    const CircleHit& h = cc.hits[static_cast<std::size_t>(i)];
    if (std::abs(h.angle_second) > kThird) continue;
    if (h.angle_first <= a.lo || h.angle_first >= a.hi) continue;
    if (cc.tangent) {
      throw DegenerateInput("right arcs of disks " + std::to_string(d.id) + " and " +
                            std::to_string(sd.id) + " are tangent");
    }
    br.add(h.angle_first);
  }
  radius_breaks(d, sd, kThird, a.lo, a.hi, tol, br);
  radius_breaks(d, sd, -kThird, a.lo, a.hi, tol, br);

  std::array<double, 10> cuts{};
  int ncut = 0;
  cuts[static_cast<std::size_t>(ncut++)] = a.lo;
  std::sort(br.t.begin(), br.t.begin() + br.n);
  for (int i = 0; i < br.n; ++i) cuts[static_cast<std::size_t>(ncut++)] = br.t[static_cast<std::size_t>(i)];
  cuts[static_cast<std::size_t>(ncut++)] = a.hi;

  // Walk the pieces; merge consecutive outside pieces into components.
  std::array<Arc, 6> comps{};
  int ncomp = 0;
  bool open = false;
  for (int i = 0; i + 1 < ncut; ++i) {
    const double t0 = cuts[static_cast<std::size_t>(i)];
    const double t1 = cuts[static_cast<std::size_t>(i + 1)];
    const bool outside = !s.contains(a.point_at(0.5 * (t0 + t1)));
    if (outside) {
      if (open) {
        comps[static_cast<std::size_t>(ncomp - 1)].hi = t1;
      } else {
        comps[static_cast<std::size_t>(ncomp++)] = Arc{d, t0, t1};
        open = true;
      }
    } else {
      open = false;
    }
  }
  for (int i = 0; i < ncomp; ++i) {
    const Arc& c = comps[static_cast<std::size_t>(i)];
    if (c.hi - c.lo < tol.geom) continue;
    if (out.count == 2) {
      throw std::logic_error("arc minus sector has more than two components (disks " +
                             std::to_string(d.id) + ", " + std::to_string(sd.id) + ")");
    }
    out.items[static_cast<std::size_t>(out.count++)] = c;
  }
  return out;
}

Arc apply_rule(const Arc& a, const Disk& d, const Disk& d2, const Tolerance& tol) {
  if (!(d2.radius > d.radius)) {
    throw std::invalid_argument("apply_rule: trimming disk must be strictly larger");
  }
  if (a.empty()) return Arc::none(d);
  const ArcComponents comps = subtract_sector(right_arc(d), Sector{d2}, tol);
  Arc chosen = Arc::none(d);
  if (comps.size() == 1) {
    chosen = comps[0];
  } else if (comps.size() == 2) {
    chosen = d.center.y() > d2.center.y() ? comps[1] : comps[0];
  }
  return intersect_arcs(a, chosen);
}

Point conjugate_point(const Point& p, const Disk& owner, const Tolerance& tol) {
  const Point v = p - owner.center;
  const double theta = std::atan2(v.y(), v.x());
  if (std::abs(theta) * owner.radius <= tol.geom) {
    throw DegenerateInput("conjugate of the middle point of a right arc is undefined");
  }
  return owner.center + owner.radius * Point(std::cos(theta), -std::sin(theta));
}

Arc intersect_arcs(const Arc& a, const Arc& b) {
  if (a.disk.id != b.disk.id) {
    throw ArcOwnerMismatch("cannot intersect arcs of disks " + std::to_string(a.disk.id) +
                           " and " + std::to_string(b.disk.id));
  }
  Arc out{a.disk, std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (out.empty()) return Arc::none(a.disk);
  return out;
}

Arc drop_sliver(const Arc& a, const Tolerance& tol) noexcept {
  if (a.empty() || a.hi - a.lo < tol.geom) return Arc::none(a.disk);
  return a;
}

double dist_x(const Point& p, const Sector& s) {
  const Disk& d = s.disk;
  const double vy = p.y() - d.center.y();
  if (std::abs(vy) > d.radius * kHalfSqrt3) return std::numeric_limits<double>::infinity();
  const double x_in = d.center.x() + std::abs(vy) / kSqrt3;
  const double x_out = d.center.x() + std::sqrt(std::max(0.0, d.radius * d.radius - vy * vy));
  if (x_out < p.x()) return std::numeric_limits<double>::infinity();
  return std::max(0.0, x_in - p.x());
}

double dist_x(const Point& p, const Arc& a) {
  if (a.empty()) return std::numeric_limits<double>::infinity();
  const double y0 = a.lower_endpoint().y();
  const double y1 = a.upper_endpoint().y();
  if (p.y() < y0 || p.y() > y1) return std::numeric_limits<double>::infinity();
  const double vy = p.y() - a.disk.center.y();
  const double x =
      a.disk.center.x() + std::sqrt(std::max(0.0, a.disk.radius * a.disk.radius - vy * vy));
  if (x < p.x()) return std::numeric_limits<double>::infinity();
  return x - p.x();
}

double arc_angle_at_y(const Disk& d, double y) noexcept {
  const double s = std::clamp((y - d.center.y()) / d.radius, -kHalfSqrt3, kHalfSqrt3);
  return std::asin(s);
}

}  // namespace maxdisk
