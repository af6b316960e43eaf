#include "maxdisk/engine.hpp"

#include "maxdisk/dc_builder.hpp"
#include "maxdisk/naive_builder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace maxdisk {

std::size_t Structure::arc_count() const noexcept {
  std::size_t n = 0;
  for (const FrameMap& f : frames) n += f.map.arcs.size();
  return n;
}

std::size_t Structure::entry_count() const noexcept {
  std::size_t n = 0;
  for (const FrameMap& f : frames) n += f.locator.entry_count();
  return n;
}

std::vector<std::string> validate(std::span<const Disk> disks, const Tolerance& tol) {
  std::vector<std::string> out;
  auto name = [](const Disk& d) { return std::to_string(d.id); };

  std::unordered_set<DiskId> ids;
  for (const Disk& d : disks) {
    if (!std::isfinite(d.center.x()) || !std::isfinite(d.center.y()) || !std::isfinite(d.radius)) {
      out.push_back("non-finite value: disk " + name(d));
      continue;
    }
    if (!(d.radius > 0.0)) out.push_back("non-positive radius: disk " + name(d));
    if (!ids.insert(d.id).second) out.push_back("duplicate id: " + name(d));
  }
  if (!out.empty()) return out;

  std::vector<std::size_t> order(disks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return disks[a].radius < disks[b].radius; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Disk& a = disks[order[k - 1]];
    const Disk& b = disks[order[k]];
    if (b.radius - a.radius <= tol.radius) {
      out.push_back("radius tie: disks " + name(a) + " and " + name(b));
    }
  }

  for (Frame f : kAllFrames) {
    const double theta = -frame_angle(f);
    std::vector<double> ys(disks.size());
    for (std::size_t i = 0; i < disks.size(); ++i) ys[i] = rotate_point(disks[i].center, theta).y();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (ys[order[k]] - ys[order[k - 1]] <= tol.coord) {
        out.push_back("y tie (frame " + std::to_string(frame_index(f)) + "): disks " +
                      name(disks[order[k - 1]]) + " and " + name(disks[order[k]]));
      }
    }
  }
  return out;
}

std::vector<Disk> frame_disks(std::span<const Disk> disks, Frame f) {
  std::vector<Disk> out;
  out.reserve(disks.size());
  const double theta = -frame_angle(f);
  for (const Disk& d : disks) out.push_back(f == Frame::Right ? d : rotate_disk(d, theta));
  return out;
}

ArcMap build_frame_map(std::span<const Disk> disks, Frame f, Builder builder, const Tolerance& tol) {
  const std::vector<Disk> rotated = frame_disks(disks, f);
  ArcMap m = builder == Builder::Naive ? build_naive(rotated, tol) : build_dc(rotated, tol);
  m.frame = f;
  return m;
}

Structure assemble(std::vector<Disk> disks, std::array<FrameMap, 3> frames) {
  Structure s;
  s.disks = std::move(disks);
  s.frames = std::move(frames);
  for (std::size_t i = 0; i < s.disks.size(); ++i) s.by_id.emplace(s.disks[i].id, i);
  return s;
}

Structure preprocess(std::span<const Disk> disks, Builder builder, const Tolerance& tol) {
  auto violations = validate(disks, tol);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  std::array<FrameMap, 3> frames;
  for (Frame f : kAllFrames) {
    FrameMap& fm = frames[static_cast<std::size_t>(frame_index(f))];
    fm.map = build_frame_map(disks, f, builder, tol);
    fm.locator = build_locator(fm.map);
  }
  return assemble({disks.begin(), disks.end()}, std::move(frames));
}

std::optional<DiskId> frame_hit(const Structure& s, Frame f, const Point& q, LocatorStats* stats) {
  const Point local = f == Frame::Right ? q : rotate_point(q, -frame_angle(f));
  return first_arc_right(s.frames[static_cast<std::size_t>(frame_index(f))].locator, local, stats);
}

QueryAnswer query(const Structure& s, const Point& q, LocatorStats* stats) {
  std::array<const CurveLocator*, 3> locs;
  std::array<Point, 3> local;
  for (Frame f : kAllFrames) {
    const auto k = static_cast<std::size_t>(frame_index(f));
    locs[k] = &s.frames[k].locator.index();
    local[k] = f == Frame::Right ? q : rotate_point(q, -frame_angle(f));
  }
  std::array<CurveLocator::Hit, 3> hits;
  CurveLocator::first_hits(locs, local, hits, stats);

  // Containment is checked in each frame's own coordinates against the
  // located arc's circle; rotation preserves it.
  QueryAnswer ans;
  double best = -1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const CurveLocator::Hit& h = hits[k];
    if (h.curve < 0) continue;
    const DiskId id = s.frames[k].locator.owner(static_cast<std::size_t>(h.curve));
    ans.candidates[k] = id;
    if (h.r > best && point_in_disk(local[k], Disk{id, Point(h.cx, h.cy), h.r})) {
      best = h.r;
      ans.id = id;
    }
  }
  return ans;
}

QueryAnswer oracle_query(std::span<const Disk> disks, const Point& q) {
  QueryAnswer ans;
  double best = -1.0;
  for (const Disk& d : disks) {
    if (d.radius > best && point_in_disk(q, d)) {
      best = d.radius;
      ans.id = d.id;
    }
  }
  return ans;
}

}  // namespace maxdisk
