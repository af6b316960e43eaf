#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdisk {

using Point = Eigen::Vector2d;
using DiskId = std::int64_t;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kThird = kPi / 3.0;  // half-opening of a right portion
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Closed disk with a caller-chosen identity.
struct Disk {
  DiskId id = 0;
  Point center = Point::Zero();
  double radius = 1.0;
};

/// Thresholds that realise the general-position assumptions.
///
/// `radius` and `coord` are the minimum separations validation accepts between
/// radii and between centre coordinates; `geom` is the absolute slack used by
/// predicates on inputs normalised to [-1e6, 1e6].
struct Tolerance {
  double radius = 1e-7;
  double coord = 1e-7;
  double geom = 1e-9;
};

inline constexpr Tolerance kDefaultTolerance{};

class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// The three portions of every disk. Frame f is realised by rotating the
/// instance by -angle(f), after which its portion becomes the right portion.
enum class Frame : std::uint8_t { Right = 0, Top = 1, Bottom = 2 };

inline constexpr std::array<Frame, 3> kAllFrames{Frame::Right, Frame::Top, Frame::Bottom};

constexpr double frame_angle(Frame f) noexcept {
  switch (f) {
    case Frame::Top: return 2.0 * kPi / 3.0;
    case Frame::Bottom: return -2.0 * kPi / 3.0;
    default: return 0.0;
  }
}

constexpr int frame_index(Frame f) noexcept { return static_cast<int>(f); }

bool point_in_disk(const Point& q, const Disk& d, double eps = kDefaultTolerance.geom);

struct CircleHit {
  Point point;
  double angle_first;   // polar angle of `point` around the first circle, in (-pi, pi]
  double angle_second;  // same around the second circle
};

struct CircleIntersection {
  std::array<CircleHit, 2> hits{};
  int count = 0;
  bool tangent = false;  // the circles touch within eps; `count` is then 1
};

/// Intersections of the boundary circles of `d` and `d2`.
/// Throws DegenerateInput when the two circles coincide within `eps`.
CircleIntersection circle_circle_intersections(const Disk& d, const Disk& d2,
                                               double eps = kDefaultTolerance.geom);

inline Point rotate_point(const Point& q, double theta) {
  return Eigen::Rotation2Dd(theta) * q;
}

/// Rotates the centre only; radius and id are kept.
Disk rotate_disk(const Disk& d, double theta);

/// Normalises an angle to (-pi, pi].
double wrap_angle(double theta) noexcept;

}  // namespace maxdisk
