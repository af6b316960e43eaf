#include "maxdisk/sector_union.hpp"

#include "sweep.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

namespace maxdisk {

struct SectorUnion::Index {
  std::once_flag once;
  CurveLocator locator;
};

SectorUnion::SectorUnion(std::vector<Curve> edges, std::vector<Disk> members)
    : edges_(std::move(edges)), members_(std::move(members)), index_(std::make_shared<Index>()) {}

SectorUnion SectorUnion::of_sector(const Disk& d) {
  const auto e = sector_edges(d, 0);
  return SectorUnion({e.begin(), e.end()}, {d});
}

const CurveLocator& SectorUnion::index() const {
  std::call_once(index_->once, [this] { index_->locator = CurveLocator(edges_); });
  return index_->locator;
}

bool SectorUnion::contains(const Point& p) const {
  if (edges_.empty()) return false;
  const std::int32_t hit = index().first_hit(p);
  return hit >= 0 && !edges_[static_cast<std::size_t>(hit)].interior_right;
}

double SectorUnion::dist_x(const Point& p) const {
  if (edges_.empty()) return std::numeric_limits<double>::infinity();
  const std::int32_t hit = index().first_hit(p);
  if (hit < 0) return std::numeric_limits<double>::infinity();
  const Curve& c = edges_[static_cast<std::size_t>(hit)];
  if (!c.interior_right) return 0.0;
  return c.x_at(p.y()) - p.x();
}

std::vector<std::vector<std::size_t>> SectorUnion::chains(double tol) const {
  struct End {
    Point p;
    std::size_t edge;
    int side;  // 0 lower, 1 upper
  };
  const std::size_t n = edges_.size();
  std::vector<End> ends;
  ends.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Curve& c = edges_[i];
    ends.push_back({Point(c.x_at(c.y_lo), c.y_lo), i, 0});
    ends.push_back({Point(c.x_at(c.y_hi), c.y_hi), i, 1});
  }
  std::vector<std::size_t> order(ends.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ends[a].p.x() < ends[b].p.x(); });
  // partner[2*edge + side] = 2*edge' + side'
  std::vector<std::int64_t> partner(ends.size(), -1);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const End& ea = ends[order[a]];
    const std::size_t ka = 2 * ea.edge + static_cast<std::size_t>(ea.side);
    if (partner[ka] >= 0) continue;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const End& eb = ends[order[b]];
      if (eb.p.x() - ea.p.x() > tol) break;
      const std::size_t kb = 2 * eb.edge + static_cast<std::size_t>(eb.side);
      if (eb.edge == ea.edge || partner[kb] >= 0) continue;
      if (std::abs(eb.p.y() - ea.p.y()) > tol) continue;
      partner[ka] = static_cast<std::int64_t>(kb);
      partner[kb] = static_cast<std::int64_t>(ka);
      break;
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> chain;
    std::size_t e = start;
    int entry = 0;
    while (!seen[e]) {
      seen[e] = 1;
      chain.push_back(e);
      const std::int64_t nx = partner[2 * e + static_cast<std::size_t>(1 - entry)];
      if (nx < 0) break;
      e = static_cast<std::size_t>(nx) / 2;
      entry = static_cast<int>(nx % 2);
    }
    out.push_back(std::move(chain));
  }
  return out;
}

double SectorUnion::area() const {
  double a = 0.0;
  for (const Curve& c : edges_) a += c.interior_right ? -integral_x_dy(c) : integral_x_dy(c);
  return a;
}

SectorUnion SectorUnion::mirrored() const {
  std::vector<Curve> e;
  e.reserve(edges_.size());
  for (const Curve& c : edges_) e.push_back(c.mirrored());
  std::vector<Disk> m = members_;
  for (Disk& d : m) d.center.y() = -d.center.y();
  return SectorUnion(std::move(e), std::move(m));
}

namespace {

class MergeListener : public detail::SweepListener {
 public:
  explicit MergeListener(const std::vector<Curve>& curves)
      : curves_(curves), inside_(curves.size(), 0) {}

  bool on_start(std::int32_t id, std::int32_t nearest_other) override {
    inside_[static_cast<std::size_t>(id)] =
        nearest_other >= 0 && !curves_[static_cast<std::size_t>(nearest_other)].interior_right;
    return true;
  }

  bool inside_at_start(std::size_t id) const { return inside_[id] != 0; }

  bool on_cross(std::int32_t red, std::int32_t blue, double y) override {
    hits.push_back({red, y});
    hits.push_back({blue, y});
    return true;
  }
  std::vector<std::pair<std::int32_t, double>> hits;

 private:
  const std::vector<Curve>& curves_;
  std::vector<std::uint8_t> inside_;
};

std::vector<DiskId> sorted_ids(const SectorUnion& u) {
  std::vector<DiskId> ids;
  ids.reserve(u.members().size());
  for (const Disk& d : u.members()) ids.push_back(d.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

SectorUnion merge_unions(const SectorUnion& u1, const SectorUnion& u2, UnionStats* stats) {
  if (u2.empty()) return u1;
  if (u1.empty()) return u2;

  const auto ids1 = sorted_ids(u1);
  const auto ids2 = sorted_ids(u2);
  std::vector<DiskId> common;
  std::set_intersection(ids1.begin(), ids1.end(), ids2.begin(), ids2.end(),
                        std::back_inserter(common));
  if (!common.empty()) {
    if (common.size() == ids2.size()) return u1;
    if (common.size() == ids1.size()) return u2;
    // Shared members would put coincident edges into the overlay; rebuild
    // from the distinct disks instead.
    std::vector<Disk> all = u1.members();
    for (const Disk& d : u2.members()) {
      if (!std::binary_search(ids1.begin(), ids1.end(), d.id)) all.push_back(d);
    }
    return union_of_sectors(all, stats);
  }

  const std::size_t n1 = u1.edges().size();
  std::vector<Curve> curves = u1.edges();
  curves.insert(curves.end(), u2.edges().begin(), u2.edges().end());
  std::vector<std::uint8_t> colour(curves.size(), 0);
  std::fill(colour.begin() + static_cast<std::ptrdiff_t>(n1), colour.end(), 1);
  const auto offset = static_cast<std::int32_t>(u1.members().size());
  for (std::size_t i = n1; i < curves.size(); ++i) curves[i].source += offset;

  MergeListener listener(curves);
  detail::SweepStats ss;
  detail::red_blue_sweep(curves, colour, {false, false}, {true, true}, listener, &ss);
  if (stats) {
    stats->sweep_events += ss.events;
    stats->crossings += ss.crossings;
  }
  // Crossings arrive in increasing y; a stable sort keeps that order per curve.
  auto& hits = listener.hits;
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Curve> kept;
  kept.reserve(curves.size());
  std::size_t h = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Curve& c = curves[i];
    if (!(c.y_hi > c.y_lo)) continue;
    bool inside = listener.inside_at_start(i);
    double lo = c.y_lo;
    auto emit = [&](double hi) {
      if (!inside && hi - lo > 1e-13 * (1.0 + std::abs(lo))) kept.push_back(c.clipped(lo, hi));
    };
    for (; h < hits.size() && hits[h].first == static_cast<std::int32_t>(i); ++h) {
      const double y = std::clamp(hits[h].second, lo, c.y_hi);
      emit(y);
      lo = y;
      inside = !inside;
    }
    emit(c.y_hi);
  }

  std::vector<Disk> members = u1.members();
  members.insert(members.end(), u2.members().begin(), u2.members().end());
  return SectorUnion(std::move(kept), std::move(members));
}

SectorUnion union_of_sectors(std::span<const Disk> disks, UnionStats* stats) {
  if (disks.empty()) return {};
  if (disks.size() == 1) return SectorUnion::of_sector(disks[0]);
  const std::size_t mid = disks.size() / 2;
  return merge_unions(union_of_sectors(disks.subspan(0, mid), stats),
                      union_of_sectors(disks.subspan(mid), stats), stats);
}

bool point_in_union(const SectorUnion& u, const Point& p) { return u.contains(p); }

const std::vector<Curve>& boundary_edges(const SectorUnion& u) { return u.edges(); }

double dist_x(const Point& p, const SectorUnion& u) { return u.dist_x(p); }

}  // namespace maxdisk
