#include "maxdisk/naive_builder.hpp"

#include <algorithm>

namespace maxdisk {

std::vector<Disk> by_radius_desc(std::span<const Disk> disks) {
  std::vector<Disk> out(disks.begin(), disks.end());
  std::sort(out.begin(), out.end(), [](const Disk& a, const Disk& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.id < b.id;
  });
  return out;
}

std::vector<SidedArc> naive_sided_arcs(std::span<const Disk> disks, const Tolerance& tol) {
  std::vector<SidedArc> out;
  out.reserve(disks.size());
  for (const Disk& d : disks) {
    SidedArc s{right_arc(d), right_arc(d)};
    for (const Disk& big : disks) {
      if (!(big.radius > d.radius)) continue;
      Arc& side = big.center.y() > d.center.y() ? s.above : s.below;
      if (!side.empty()) side = apply_rule(side, d, big, tol);
    }
    out.push_back(s);
  }
  return out;
}

ArcMap build_naive(std::span<const Disk> disks, const Tolerance& tol) {
  const std::vector<Disk> sorted = by_radius_desc(disks);
  ArcMap map;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Disk& d = sorted[i];
    Arc a = right_arc(d);
    for (std::size_t j = 0; j < i && !a.empty(); ++j) a = apply_rule(a, d, sorted[j], tol);
    a = drop_sliver(a, tol);
    if (!a.empty()) map.arcs.push_back(a);
  }
  std::sort(map.arcs.begin(), map.arcs.end(),
            [](const Arc& a, const Arc& b) { return a.disk.id < b.disk.id; });
  return map;
}

}  // namespace maxdisk
