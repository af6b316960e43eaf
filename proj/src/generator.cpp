#include "maxdisk/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxdisk {

namespace {

// Indices of disks that sit too close to their successor in the given key.
void mark_close(const std::vector<double>& key, double gap, std::vector<std::uint8_t>& bad) {
  std::vector<std::size_t> order(key.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (key[order[k]] - key[order[k - 1]] <= gap) bad[std::max(order[k], order[k - 1])] = 1;
  }
}

}  // namespace

std::vector<Disk> generate_disks(const GenOptions& opt, const Tolerance& tol) {
  const std::size_t n = opt.count;
  const double box = opt.box > 0.0 ? opt.box : 8.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
  std::mt19937_64 rng(opt.seed);
  auto sample = [&](Disk& d) {
    const double x = (unit_real(rng) - 0.5) * box;
    const double y = (unit_real(rng) - 0.5) * box;
    d.center = Point(x, y);
    d.radius = opt.r_min + (opt.r_max - opt.r_min) * unit_real(rng);
  };

  std::vector<Disk> disks(n);
  for (std::size_t i = 0; i < n; ++i) {
    disks[i].id = static_cast<DiskId>(i);
    sample(disks[i]);
  }

  for (int round = 0; round < opt.max_rounds; ++round) {
    std::vector<std::uint8_t> bad(n, 0);
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = disks[i].radius;
    mark_close(key, opt.margin * tol.radius, bad);
    for (Frame f : kAllFrames) {
      for (std::size_t i = 0; i < n; ++i) key[i] = rotate_point(disks[i].center, -frame_angle(f)).y();
      mark_close(key, opt.margin * tol.coord, bad);
    }
    if (std::find(bad.begin(), bad.end(), 1) == bad.end()) return disks;
    for (std::size_t i = 0; i < n; ++i) {
      if (bad[i]) sample(disks[i]);
    }
  }
  throw std::runtime_error("generator: general-position margins not met after " +
                           std::to_string(opt.max_rounds) + " rounds");
}

std::vector<Point> sample_probes(std::span<const Disk> disks, std::size_t count,
                                 std::uint64_t seed, double margin) {
  std::vector<Point> out;
  if (count == 0) return out;
  double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
  if (!disks.empty()) {
    lo_x = lo_y = std::numeric_limits<double>::infinity();
    hi_x = hi_y = -std::numeric_limits<double>::infinity();
    for (const Disk& d : disks) {
      lo_x = std::min(lo_x, d.center.x() - d.radius);
      hi_x = std::max(hi_x, d.center.x() + d.radius);
      lo_y = std::min(lo_y, d.center.y() - d.radius);
      hi_y = std::max(hi_y, d.center.y() + d.radius);
    }
  }
  const double px = 0.05 * (hi_x - lo_x) + 1.0;
  const double py = 0.05 * (hi_y - lo_y) + 1.0;
  lo_x -= px, hi_x += px, lo_y -= py, hi_y += py;
  std::mt19937_64 rng(seed);
  out.reserve(count);
  while (out.size() < count) {
    const Point q(lo_x + (hi_x - lo_x) * unit_real(rng), lo_y + (hi_y - lo_y) * unit_real(rng));
    bool clear = true;
    for (const Disk& d : disks) {
      if (std::abs((q - d.center).norm() - d.radius) < margin) {
        clear = false;
        break;
      }
    }
    if (clear) out.push_back(q);
  }
  return out;
}

}  // namespace maxdisk
