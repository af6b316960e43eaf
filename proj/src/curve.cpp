#include "maxdisk/curve.hpp"

#include <algorithm>

namespace maxdisk {

namespace {

constexpr double kInvSqrt3 = 1.0 / kSqrt3;

bool in_range(double y, double lo, double hi) noexcept { return y >= lo && y <= hi; }

void push_sorted(CurveCrossings& out, double y) {
  if (out.count == 2) return;
  out.y[static_cast<std::size_t>(out.count++)] = y;
  if (out.count == 2 && out.y[0] > out.y[1]) std::swap(out.y[0], out.y[1]);
}

CurveCrossings segment_segment(const Curve& a, const Curve& b, double lo, double hi) {
  CurveCrossings out;
  const double dm = a.r - b.r;
  if (std::abs(dm) < 1e-12) return out;
  // a.cx + a.r (y - a.cy) = b.cx + b.r (y - b.cy)
  const double y = (b.cx - a.cx - b.r * b.cy + a.r * a.cy) / dm;
  if (in_range(y, lo, hi)) push_sorted(out, y);
  return out;
}

CurveCrossings segment_arc(const Curve& s, const Curve& c, double lo, double hi, double tol) {
  CurveCrossings out;
  const double m = s.r;
  const double k = s.cx - c.cx + m * (c.cy - s.cy);
  const double qa = 1.0 + m * m;
  const double qb = 2.0 * k * m;
  const double qc = k * k - c.r * c.r;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  const double u0 = (-qb - sq) / (2.0 * qa);
  const double u1 = (-qb + sq) / (2.0 * qa);
  const bool close = (u1 - u0) < tol;
  for (double u : {u0, u1}) {
    if (k + m * u < 0.0) continue;  // left half of the circle
    const double y = u + c.cy;
    if (!in_range(y, lo, hi)) continue;
    push_sorted(out, y);
  }
  out.tangent = close && out.count > 0;
  return out;
}

CurveCrossings arc_arc(const Curve& a, const Curve& b, double lo, double hi, double tol) {
  CurveCrossings out;
  const double dx = b.cx - a.cx;
  const double dy = b.cy - a.cy;
  const double dist2 = dx * dx + dy * dy;
  const double dist = std::sqrt(dist2);
  if (dist < 1e-15) return out;
  if (dist > a.r + b.r || dist < std::abs(a.r - b.r)) return out;
  const double along = (dist2 + a.r * a.r - b.r * b.r) / (2.0 * dist);
  const double h2 = a.r * a.r - along * along;
  if (h2 < 0.0) return out;
  const double h = std::sqrt(h2);
  const double ux = dx / dist;
  const double uy = dy / dist;
  const double bx = a.cx + along * ux;
  const double by = a.cy + along * uy;
  const bool close = 2.0 * h < tol;
  for (double sgn : {-1.0, 1.0}) {
    const double px = bx - sgn * h * uy;
    const double py = by + sgn * h * ux;
    if (px < a.cx || px < b.cx) continue;
    if (!in_range(py, lo, hi)) continue;
    push_sorted(out, py);
  }
  out.tangent = close && out.count > 0;
  return out;
}

}  // namespace

Curve arc_curve(const Arc& a) noexcept {
  Curve c;
  c.kind = Curve::Kind::Arc;
  c.cx = a.disk.center.x();
  c.cy = a.disk.center.y();
  c.r = a.disk.radius;
  c.y_lo = c.cy + c.r * std::sin(a.lo);
  c.y_hi = c.cy + c.r * std::sin(a.hi);
  c.interior_right = false;
  return c;
}

std::array<Curve, 3> sector_edges(const Disk& d, std::int32_t source) {
  const double h = d.radius * (kSqrt3 / 2.0);
  const double x = d.center.x();
  const double y = d.center.y();
  Curve bottom{Curve::Kind::Segment, true, source, y - h, y, x, y, -kInvSqrt3};
  Curve top{Curve::Kind::Segment, true, source, y, y + h, x, y, kInvSqrt3};
  Curve arc{Curve::Kind::Arc, false, source, y - h, y + h, x, y, d.radius};
  return {bottom, top, arc};
}

CurveCrossings intersect_curves(const Curve& a, const Curve& b, double tol) {
  const double lo = std::max(a.y_lo, b.y_lo);
  const double hi = std::min(a.y_hi, b.y_hi);
  if (lo > hi) return {};
  const bool sa = a.kind == Curve::Kind::Segment;
  const bool sb = b.kind == Curve::Kind::Segment;
  if (sa && sb) return segment_segment(a, b, lo, hi);
  if (sa) return segment_arc(a, b, lo, hi, tol);
  if (sb) return segment_arc(b, a, lo, hi, tol);
  return arc_arc(a, b, lo, hi, tol);
}

double integral_x_dy(const Curve& c) noexcept {
  const double dy = c.y_hi - c.y_lo;
  if (c.kind == Curve::Kind::Segment) {
    const double u0 = c.y_lo - c.cy;
    const double u1 = c.y_hi - c.cy;
    return c.cx * dy + 0.5 * c.r * (u1 * u1 - u0 * u0);
  }
  auto prim = [&](double u) {
    const double s = std::clamp(u / c.r, -1.0, 1.0);
    return 0.5 * u * std::sqrt(std::max(0.0, c.r * c.r - u * u)) + 0.5 * c.r * c.r * std::asin(s);
  };
  return c.cx * dy + prim(c.y_hi - c.cy) - prim(c.y_lo - c.cy);
}

}  // namespace maxdisk
