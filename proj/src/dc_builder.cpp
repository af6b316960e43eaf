#include "maxdisk/dc_builder.hpp"

#include "sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace maxdisk {

YTree::YTree(std::span<const Disk> disks) : leaves_(disks.begin(), disks.end()) {
  std::sort(leaves_.begin(), leaves_.end(),
            [](const Disk& a, const Disk& b) { return a.center.y() < b.center.y(); });
  width_ = std::bit_ceil(std::max<std::size_t>(1, leaves_.size()));
  depth_ = std::countr_zero(width_);
}

int YTree::level(std::size_t node) const noexcept {
  return static_cast<int>(std::bit_width(node)) - 1;
}

std::pair<std::size_t, std::size_t> YTree::leaf_range(std::size_t node) const noexcept {
  const int l = level(node);
  const std::size_t w = width_ >> l;
  const std::size_t j = node - (std::size_t{1} << l);
  const std::size_t first = std::min(j * w, leaves_.size());
  const std::size_t last = std::min((j + 1) * w, leaves_.size());
  return {first, last};
}

std::size_t YTree::rank(double y) const noexcept {
  const auto it = std::lower_bound(leaves_.begin(), leaves_.end(), y,
                                   [](const Disk& d, double v) { return d.center.y() < v; });
  return static_cast<std::size_t>(it - leaves_.begin());
}

std::size_t YTree::cover_node(std::size_t r, bool above, int lvl) const noexcept {
  const std::size_t w = width_ >> lvl;
  const std::size_t count = std::size_t{1} << lvl;
  std::size_t j;
  if (above) {
    // suffix [r, width)
    j = (r + w - 1) / w;
    if (j >= count) return 0;
    if (lvl == 0 ? j != 0 : j % 2 == 0) return 0;
    if (j * w >= leaves_.size()) return 0;
  } else {
    // prefix [0, r); padding leaves are empty, so a full prefix is the root
    if (r >= leaves_.size()) r = width_;
    const std::size_t k = r / w;
    if (k == 0) return 0;
    j = k - 1;
    if (lvl != 0 && j % 2 == 1) return 0;
  }
  return count + j;
}

std::vector<std::size_t> YTree::cover(std::size_t r, bool above) const {
  std::vector<std::size_t> out;
  for (int l = 0; l <= depth_; ++l) {
    if (const std::size_t v = cover_node(r, above, l)) out.push_back(v);
  }
  return out;
}

BucketAssignment assign_buckets(const YTree& tree, std::span<const Disk> disks, Side side) {
  BucketAssignment out;
  out.buckets.resize(2 * tree.width());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const std::size_t r = tree.rank(disks[i].center.y());
    for (std::size_t v : tree.cover(r, side == Side::Above)) out.buckets[v].push_back(i);
  }
  return out;
}

namespace {

// Tracks, per red arc, whether the sweep is currently outside the union and
// where the current outside stretch began.
class EscapeListener : public detail::SweepListener {
 public:
  EscapeListener(const std::vector<Curve>& curves, std::size_t red_count)
      : curves_(curves), state_(red_count, kWaiting), from_(red_count), to_(red_count) {}

  bool on_start(std::int32_t id, std::int32_t nearest_blue) override {
    const auto i = static_cast<std::size_t>(id);
    if (i >= state_.size()) return true;
    const Curve& c = curves_[i];
    if (nearest_blue >= 0 && !curves_[static_cast<std::size_t>(nearest_blue)].interior_right) {
      state_[i] = kInside;
    } else {
      state_[i] = kOutside;
      from_[i] = c.y_lo;
    }
    return true;
  }

  bool on_cross(std::int32_t red, std::int32_t, double y) override {
    const auto i = static_cast<std::size_t>(red);
    if (state_[i] == kInside) {
      state_[i] = kOutside;
      from_[i] = y;
      return true;
    }
    state_[i] = kDone;
    to_[i] = y;
    return false;
  }

  // The component as a y-range; empty when lo > hi.
  std::pair<double, double> result(std::size_t i) const {
    switch (state_[i]) {
      case kOutside: return {from_[i], curves_[i].y_hi};
      case kDone: return {from_[i], to_[i]};
      default: return {1.0, 0.0};
    }
  }

 private:
  enum State : std::uint8_t { kWaiting, kInside, kOutside, kDone };
  const std::vector<Curve>& curves_;
  std::vector<State> state_;
  std::vector<double> from_, to_;
};

}  // namespace

std::vector<Arc> lowest_escape_subarcs(std::span<const Arc> arcs, const SectorUnion& u,
                                       EscapeStats* stats) {
  std::vector<Arc> out(arcs.begin(), arcs.end());
  if (u.empty()) return out;
  std::vector<Curve> curves;
  curves.reserve(arcs.size() + u.edges().size());
  for (const Arc& a : arcs) {
    Curve c = a.empty() ? Curve{} : arc_curve(a);
    if (a.empty()) c.y_lo = c.y_hi = 0.0;
    curves.push_back(c);
  }
  curves.insert(curves.end(), u.edges().begin(), u.edges().end());
  std::vector<std::uint8_t> colour(curves.size(), 1);
  std::fill(colour.begin(), colour.begin() + static_cast<std::ptrdiff_t>(arcs.size()), 0);

  EscapeListener listener(curves, arcs.size());
  detail::SweepStats ss;
  detail::red_blue_sweep(curves, colour, {true, false}, {true, false}, listener, &ss);
  if (stats) stats->sweep_events += ss.events;

  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.empty()) continue;
    const auto [lo, hi] = listener.result(i);
    if (!(lo < hi)) {
      out[i] = Arc::none(a.disk);
      continue;
    }
    const Curve& c = curves[i];
    const double t0 = lo == c.y_lo ? a.lo : std::clamp(arc_angle_at_y(a.disk, lo), a.lo, a.hi);
    const double t1 = hi == c.y_hi ? a.hi : std::clamp(arc_angle_at_y(a.disk, hi), a.lo, a.hi);
    out[i] = t0 <= t1 ? Arc{a.disk, t0, t1} : Arc::none(a.disk);
  }
  return out;
}

namespace {

Arc mirror_arc(const Arc& a) {
  Disk d = a.disk;
  d.center.y() = -d.center.y();
  if (a.empty()) return Arc::none(d);
  return Arc{d, -a.hi, -a.lo};
}

}  // namespace

std::vector<Arc> highest_escape_subarcs(std::span<const Arc> arcs, const SectorUnion& u,
                                        EscapeStats* stats) {
  std::vector<Arc> flipped;
  flipped.reserve(arcs.size());
  for (const Arc& a : arcs) flipped.push_back(mirror_arc(a));
  std::vector<Arc> low = lowest_escape_subarcs(flipped, u.mirrored(), stats);
  for (std::size_t i = 0; i < low.size(); ++i) {
    Arc back = mirror_arc(low[i]);
    back.disk = arcs[i].disk;
    low[i] = back;
  }
  return low;
}

SidedArcMap merge_maps(const SidedArcMap& m_minus, std::span<const Disk> d_plus, DcStats* stats) {
  SidedArcMap out = m_minus;
  if (d_plus.empty() || m_minus.arcs.empty()) return out;
  const YTree tree(d_plus);
  const std::size_t width = tree.width();

  std::vector<std::size_t> rank(out.arcs.size());
  for (std::size_t i = 0; i < out.arcs.size(); ++i) {
    rank[i] = tree.rank(out.arcs[i].above.disk.center.y());
  }

  // Leaf unions, then one level up at a time; children are dropped once
  // their parent exists.
  std::vector<SectorUnion> level_unions(width);
  for (std::size_t j = 0; j < tree.leaves().size(); ++j) {
    level_unions[j] = SectorUnion::of_sector(tree.leaves()[j]);
  }

  std::uint64_t work = 0;
  EscapeStats es;
  std::vector<std::vector<std::size_t>> bucket_above, bucket_below;
  std::vector<Arc> batch;
  for (int lvl = tree.depth(); lvl >= 0; --lvl) {
    const std::size_t count = std::size_t{1} << lvl;
    if (lvl < tree.depth()) {
      std::vector<SectorUnion> up(count);
      for (std::size_t j = 0; j < count; ++j) {
        up[j] = merge_unions(level_unions[2 * j], level_unions[2 * j + 1]);
        if (stats && up[j].members().size() > 1) {
          stats->max_union_ratio =
              std::max(stats->max_union_ratio, static_cast<double>(up[j].edge_count()) /
                                                   static_cast<double>(up[j].members().size()));
        }
      }
      level_unions = std::move(up);
    }
    for (const SectorUnion& u : level_unions) work += u.members().size();

    bucket_above.assign(count, {});
    bucket_below.assign(count, {});
    for (std::size_t i = 0; i < out.arcs.size(); ++i) {
      if (!out.arcs[i].above.empty()) {
        if (const std::size_t v = tree.cover_node(rank[i], true, lvl)) {
          bucket_above[v - count].push_back(i);
        }
      }
      if (!out.arcs[i].below.empty()) {
        if (const std::size_t v = tree.cover_node(rank[i], false, lvl)) {
          bucket_below[v - count].push_back(i);
        }
      }
    }

    for (std::size_t j = 0; j < count; ++j) {
      const SectorUnion& u = level_unions[j];
      if (u.empty()) continue;
      if (!bucket_above[j].empty()) {
        work += bucket_above[j].size();
        batch.clear();
        for (std::size_t i : bucket_above[j]) batch.push_back(out.arcs[i].above);
        const auto res = lowest_escape_subarcs(batch, u, &es);
        for (std::size_t k = 0; k < res.size(); ++k) out.arcs[bucket_above[j][k]].above = res[k];
      }
      if (!bucket_below[j].empty()) {
        work += bucket_below[j].size();
        batch.clear();
        for (std::size_t i : bucket_below[j]) batch.push_back(out.arcs[i].below);
        const auto res = highest_escape_subarcs(batch, u, &es);
        for (std::size_t k = 0; k < res.size(); ++k) out.arcs[bucket_below[j][k]].below = res[k];
      }
    }
  }

  if (stats) {
    const double n = static_cast<double>(d_plus.size() + m_minus.arcs.size());
    ++stats->merges;
    stats->sweep_events += es.sweep_events;
    stats->max_work_ratio =
        std::max(stats->max_work_ratio, static_cast<double>(work) / (n * std::log2(n)));
  }
  return out;
}

namespace {

constexpr std::size_t kBaseCase = 4;

std::vector<SidedArc> build_sided(std::span<const Disk> sorted, const Tolerance& tol,
                                  DcStats* stats) {
  if (sorted.size() <= kBaseCase) return naive_sided_arcs(sorted, tol);
  const std::size_t mid = sorted.size() / 2;
  const auto plus_disks = sorted.subspan(0, mid);
  std::vector<SidedArc> plus = build_sided(plus_disks, tol, stats);
  SidedArcMap minus{Frame::Right, build_sided(sorted.subspan(mid), tol, stats)};
  SidedArcMap trimmed = merge_maps(minus, plus_disks, stats);
  plus.insert(plus.end(), trimmed.arcs.begin(), trimmed.arcs.end());
  return plus;
}

}  // namespace

ArcMap build_dc(std::span<const Disk> disks, const Tolerance& tol, DcStats* stats) {
  const std::vector<Disk> sorted = by_radius_desc(disks);
  const std::vector<SidedArc> sided = build_sided(sorted, tol, stats);
  ArcMap map;
  for (const SidedArc& s : sided) {
    const Arc a = drop_sliver(s.combined(), tol);
    if (!a.empty()) map.arcs.push_back(a);
  }
  std::sort(map.arcs.begin(), map.arcs.end(),
            [](const Arc& a, const Arc& b) { return a.disk.id < b.disk.id; });
  return map;
}

}  // namespace maxdisk
