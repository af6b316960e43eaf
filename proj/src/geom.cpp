#include "maxdisk/geom.hpp"

#include <cmath>
#include <numeric>

namespace maxdisk {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "instance violates general position:";
  for (const auto& s : v) {
    out += "\n  ";
    out += s;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

bool point_in_disk(const Point& q, const Disk& d, double eps) {
  const double rr = d.radius + eps;
  return (q - d.center).squaredNorm() <= rr * rr;
}

CircleIntersection circle_circle_intersections(const Disk& d, const Disk& d2, double eps) {
  CircleIntersection out;
  const Point delta = d2.center - d.center;
  const double dist = delta.norm();
  const double r1 = d.radius;
  const double r2 = d2.radius;
  if (dist <= eps && std::abs(r1 - r2) <= eps) {
    throw DegenerateInput("circles of disks " + std::to_string(d.id) + " and " +
                          std::to_string(d2.id) + " coincide");
  }
  if (dist > r1 + r2 + eps || dist < std::abs(r1 - r2) - eps || dist <= eps) {
    return out;
  }
  const Point u = delta / dist;
  const Point perp(-u.y(), u.x());
  // Distance from d's centre to the radical line, along u.
  const double a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
  const double h2 = r1 * r1 - a * a;
  auto make_hit = [&](const Point& p) {
    const Point v1 = p - d.center;
    const Point v2 = p - d2.center;
    return CircleHit{p, std::atan2(v1.y(), v1.x()), std::atan2(v2.y(), v2.x())};
  };
  if (std::abs(dist - (r1 + r2)) <= eps || std::abs(dist - std::abs(r1 - r2)) <= eps ||
      h2 <= 0.0) {
    out.tangent = true;
    out.count = 1;
    out.hits[0] = make_hit(d.center + a * u);
    return out;
  }
  const double h = std::sqrt(h2);
  const Point base = d.center + a * u;
  out.count = 2;
  out.hits[0] = make_hit(base - h * perp);
  out.hits[1] = make_hit(base + h * perp);
  return out;
}

Disk rotate_disk(const Disk& d, double theta) {
  return Disk{d.id, rotate_point(d.center, theta), d.radius};
}

double wrap_angle(double theta) noexcept {
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

}  // namespace maxdisk
