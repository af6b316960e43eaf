#include "maxdisk/locator.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <new>
#include <cmath>
#include <numeric>
#include <stdexcept>

#if defined(__linux__)
#include <sys/mman.h>
#endif

namespace maxdisk {

namespace detail {

namespace {
constexpr std::size_t kHugePage = std::size_t{2} << 20;
constexpr std::size_t kHead = 64;  // keeps the size in front of the block
}  // namespace

void* huge_alloc(std::size_t bytes) {
  const bool big = bytes >= kHugePage;
  const std::size_t align = big ? kHugePage : kHead;
  const std::size_t total = (bytes + kHead + align - 1) / align * align;
  void* raw = std::aligned_alloc(align, total);
  if (!raw) throw std::bad_alloc();
#if defined(__linux__) && defined(MADV_HUGEPAGE)
  if (big) madvise(raw, total, MADV_HUGEPAGE);
#endif
  return static_cast<char*>(raw) + kHead;
}

void huge_free(void* p) noexcept {
  if (p) std::free(static_cast<char*>(p) - kHead);
}

}  // namespace detail

namespace {

// Left-to-right order of two non-crossing curves that share part of their
// y-range, decided where they are furthest from any shared endpoint.
bool curve_left_of(const Curve& a, std::int32_t ia, const Curve& b, std::int32_t ib) noexcept {
  const double lo = std::max(a.y_lo, b.y_lo);
  const double hi = std::min(a.y_hi, b.y_hi);
  const double y = 0.5 * (lo + hi);
  const double xa = a.x_at(y);
  const double xb = b.x_at(y);
  const double scale = 1e-12 * (1.0 + std::abs(xa) + std::abs(xb));
  if (xa < xb - scale) return true;
  if (xa > xb + scale) return false;
  const double sa = a.slope_at(y);
  const double sb = b.slope_at(y);
  if (sa != sb) return sa < sb;
  return ia < ib;
}

// Ephemeral red-black tree over curve ids, mirrored into persistent nodes by
// `sync`.
class PersistentBuilder {
 public:
  PersistentBuilder(const std::vector<Curve>& curves, std::vector<CurveLocator::Node>& nodes)
      : curves_(curves),
        nodes_(nodes),
        left_(curves.size(), -1),
        right_(curves.size(), -1),
        parent_(curves.size(), -1),
        live_(curves.size(), -1),
        in_tree_(curves.size(), 0),
        dirty_flag_(curves.size(), 0),
        red_(curves.size(), 0) {}

  void begin_version(std::int32_t v) { version_ = v; }

  void insert(std::int32_t c) {
    left_[c] = right_[c] = parent_[c] = -1;
    red_[c] = 1;
    in_tree_[c] = 1;
    live_[c] = new_node(c);
    mark(c);
    if (root_ < 0) {
      root_ = c;
    } else {
      std::int32_t at = root_;
      for (;;) {
        const bool go_left = curve_left_of(curves_[c], c, curves_[at], at);
        const std::int32_t next = go_left ? left_[at] : right_[at];
        if (next < 0) {
          go_left ? set_left(at, c) : set_right(at, c);
          parent_[c] = at;
          break;
        }
        at = next;
      }
    }
    insert_fixup(c);
  }

  void erase(std::int32_t z) {
    std::int32_t y = z;
    bool removed_black = !red_[y];
    std::int32_t x, x_parent;
    if (left_[z] < 0) {
      x = right_[z];
      x_parent = parent_[z];
      transplant(z, right_[z]);
    } else if (right_[z] < 0) {
      x = left_[z];
      x_parent = parent_[z];
      transplant(z, left_[z]);
    } else {
      y = right_[z];
      while (left_[y] >= 0) y = left_[y];
      removed_black = !red_[y];
      x = right_[y];
      if (parent_[y] == z) {
        x_parent = y;
      } else {
        x_parent = parent_[y];
        transplant(y, right_[y]);
        set_right(y, right_[z]);
        parent_[right_[y]] = y;
      }
      transplant(z, y);
      set_left(y, left_[z]);
      parent_[left_[y]] = y;
      red_[y] = red_[z];
    }
    if (removed_black) erase_fixup(x, x_parent);
    left_[z] = right_[z] = parent_[z] = -1;
    in_tree_[z] = 0;
  }

  // Makes the persistent nodes of the current version agree with the tree.
  std::int32_t sync() {
    while (!dirty_.empty()) {
      const std::int32_t x = dirty_.back();
      dirty_.pop_back();
      dirty_flag_[x] = 0;
      if (!in_tree_[x]) continue;
      const std::int32_t want_l = left_[x] >= 0 ? live_[left_[x]] : -1;
      const std::int32_t want_r = right_[x] >= 0 ? live_[right_[x]] : -1;
      if (latest(live_[x], CurveLocator::kLeft) != want_l) write(x, CurveLocator::kLeft, want_l);
      if (latest(live_[x], CurveLocator::kRight) != want_r) write(x, CurveLocator::kRight, want_r);
    }
    return root_ >= 0 ? live_[root_] : -1;
  }

 private:
  void mark(std::int32_t x) {
    if (x >= 0 && !dirty_flag_[x]) {
      dirty_flag_[x] = 1;
      dirty_.push_back(x);
    }
  }

  std::int32_t new_node(std::int32_t c) {
    CurveLocator::Node n;
    n.curve = c;
    nodes_.push_back(n);
    created_.push_back(version_);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t latest(std::int32_t p, std::uint8_t field) const {
    const auto& n = nodes_[static_cast<std::size_t>(p)];
    if (n.mod_field == field) return n.mod_value;
    return field == CurveLocator::kLeft ? n.left : n.right;
  }

  void write(std::int32_t x, std::uint8_t field, std::int32_t value) {
    const std::int32_t p = live_[x];
    auto& n = nodes_[static_cast<std::size_t>(p)];
    if (created_[static_cast<std::size_t>(p)] == version_) {
      (field == CurveLocator::kLeft ? n.left : n.right) = value;
      return;
    }
    if (n.mod_field == CurveLocator::kNone ||
        (n.mod_version == version_ && n.mod_field == field)) {
      n.mod_field = field;
      n.mod_version = version_;
      n.mod_value = value;
      return;
    }
    // Slot taken: copy the node with its latest fields and re-point the parent.
    const std::int32_t keep_l = latest(p, CurveLocator::kLeft);
    const std::int32_t keep_r = latest(p, CurveLocator::kRight);
    const std::int32_t q = new_node(x);
    auto& m = nodes_[static_cast<std::size_t>(q)];
    m.left = field == CurveLocator::kLeft ? value : keep_l;
    m.right = field == CurveLocator::kRight ? value : keep_r;
    live_[x] = q;
    mark(parent_[x]);
  }

  // Only child pointers are persistent; colours live in the ephemeral tree.
  void set_left(std::int32_t a, std::int32_t v) {
    left_[a] = v;
    mark(a);
  }
  void set_right(std::int32_t a, std::int32_t v) {
    right_[a] = v;
    mark(a);
  }
  bool is_red(std::int32_t x) const { return x >= 0 && red_[x]; }

  void replace_child(std::int32_t p, std::int32_t old_child, std::int32_t v) {
    if (p < 0) root_ = v;
    else if (left_[p] == old_child) set_left(p, v);
    else set_right(p, v);
  }

  void transplant(std::int32_t u, std::int32_t v) {
    replace_child(parent_[u], u, v);
    if (v >= 0) parent_[v] = parent_[u];
  }

  void rotate_left(std::int32_t x) {
    const std::int32_t y = right_[x];
    set_right(x, left_[y]);
    if (left_[y] >= 0) parent_[left_[y]] = x;
    parent_[y] = parent_[x];
    replace_child(parent_[x], x, y);
    set_left(y, x);
    parent_[x] = y;
  }

  void rotate_right(std::int32_t x) {
    const std::int32_t y = left_[x];
    set_left(x, right_[y]);
    if (right_[y] >= 0) parent_[right_[y]] = x;
    parent_[y] = parent_[x];
    replace_child(parent_[x], x, y);
    set_right(y, x);
    parent_[x] = y;
  }

  void insert_fixup(std::int32_t c) {
    while (is_red(parent_[c])) {
      std::int32_t p = parent_[c];
      const std::int32_t g = parent_[p];
      if (p == left_[g]) {
        const std::int32_t u = right_[g];
        if (is_red(u)) {
          red_[p] = red_[u] = 0;
          red_[g] = 1;
          c = g;
          continue;
        }
        if (c == right_[p]) {
          c = p;
          rotate_left(c);
          p = parent_[c];
        }
        red_[p] = 0;
        red_[g] = 1;
        rotate_right(g);
      } else {
        const std::int32_t u = left_[g];
        if (is_red(u)) {
          red_[p] = red_[u] = 0;
          red_[g] = 1;
          c = g;
          continue;
        }
        if (c == left_[p]) {
          c = p;
          rotate_right(c);
          p = parent_[c];
        }
        red_[p] = 0;
        red_[g] = 1;
        rotate_left(g);
      }
    }
    red_[root_] = 0;
  }

  void erase_fixup(std::int32_t x, std::int32_t xp) {
    while (x != root_ && !is_red(x)) {
      if (x == left_[xp]) {
        std::int32_t w = right_[xp];
        if (is_red(w)) {
          red_[w] = 0;
          red_[xp] = 1;
          rotate_left(xp);
          w = right_[xp];
        }
        if (!is_red(left_[w]) && !is_red(right_[w])) {
          red_[w] = 1;
          x = xp;
          xp = parent_[x];
        } else {
          if (!is_red(right_[w])) {
            red_[left_[w]] = 0;
            red_[w] = 1;
            rotate_right(w);
            w = right_[xp];
          }
          red_[w] = red_[xp];
          red_[xp] = 0;
          if (right_[w] >= 0) red_[right_[w]] = 0;
          rotate_left(xp);
          x = root_;
        }
      } else {
        std::int32_t w = left_[xp];
        if (is_red(w)) {
          red_[w] = 0;
          red_[xp] = 1;
          rotate_right(xp);
          w = left_[xp];
        }
        if (!is_red(left_[w]) && !is_red(right_[w])) {
          red_[w] = 1;
          x = xp;
          xp = parent_[x];
        } else {
          if (!is_red(left_[w])) {
            red_[right_[w]] = 0;
            red_[w] = 1;
            rotate_left(w);
            w = left_[xp];
          }
          red_[w] = red_[xp];
          red_[xp] = 0;
          if (left_[w] >= 0) red_[left_[w]] = 0;
          rotate_right(xp);
          x = root_;
        }
      }
    }
    if (x >= 0) red_[x] = 0;
  }

  const std::vector<Curve>& curves_;
  std::vector<CurveLocator::Node>& nodes_;
  std::vector<std::int32_t> created_;
  std::vector<std::int32_t> left_, right_, parent_, live_;
  std::vector<std::uint8_t> in_tree_, dirty_flag_, red_;
  std::vector<std::int32_t> dirty_;
  std::int32_t root_ = -1;
  std::int32_t version_ = 0;
};

}  // namespace

CurveLocator::CurveLocator(std::vector<Curve> curves) : curves_(std::move(curves)) { build(); }

void CurveLocator::build() {
  struct Event {
    double y;
    bool start;
    std::int32_t curve;
  };
  std::vector<Event> events;
  events.reserve(2 * curves_.size());
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const Curve& c = curves_[i];
    if (!(c.y_hi > c.y_lo)) continue;
    events.push_back({c.y_lo, true, static_cast<std::int32_t>(i)});
    events.push_back({c.y_hi, false, static_cast<std::int32_t>(i)});
  }
  // Removals before insertions at equal y.
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.y != b.y) return a.y < b.y;
    if (a.start != b.start) return !a.start;
    return a.curve < b.curve;
  });
  PersistentBuilder builder(curves_, nodes_);
  std::size_t i = 0;
  while (i < events.size()) {
    const double y = events[i].y;
    const auto version = static_cast<std::int32_t>(slab_y_.size());
    builder.begin_version(version);
    for (; i < events.size() && events[i].y == y; ++i) {
      if (events[i].start) builder.insert(events[i].curve);
      else builder.erase(events[i].curve);
    }
    slab_y_.push_back(y);
    roots_.push_back(builder.sync());
  }
  make_hot();
}

void CurveLocator::make_hot() {
  const std::size_t n = slab_y_.size();
  seg_.assign(n + 2, SlabRef{-std::numeric_limits<double>::infinity(), -1, -1});
  for (std::size_t k = 1; k <= n; ++k) {
    seg_[k] = SlabRef{slab_y_[k - 1], roots_[k - 1], static_cast<std::int32_t>(k - 1)};
  }
  seg_[n + 1].y = std::numeric_limits<double>::infinity();

  // bucket_of is monotone in y, so a boundary in an earlier bucket is below
  // any query in a later one and only the query's own bucket needs a search.
  const std::size_t buckets = std::max<std::size_t>(1, n);
  bucket_start_.assign(buckets + 1, 0);
  bucket_y0_ = n > 0 ? slab_y_.front() : 0.0;
  const double extent = n > 0 ? slab_y_.back() - bucket_y0_ : 0.0;
  bucket_scale_ = extent > 0.0 ? static_cast<double>(buckets) / extent : 0.0;
  for (const double y : slab_y_) ++bucket_start_[bucket_of(y) + 1];
  std::size_t fullest = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    fullest = std::max<std::size_t>(fullest, static_cast<std::size_t>(bucket_start_[b + 1]));
    bucket_start_[b + 1] += bucket_start_[b];
  }
  bucket_steps_ = std::bit_width(fullest);

  hot_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const Curve& c = curves_[static_cast<std::size_t>(n.curve)];
    hot_[i] = Hot{c.cx,   c.cy,          c.r,         n.curve,     n.left,
                  n.right, n.mod_version, n.mod_value, n.mod_field, c.kind == Curve::Kind::Arc};
  }
}

CurveLocator CurveLocator::from_tables(std::vector<Curve> curves, std::vector<double> slab_y,
                                       std::vector<std::int32_t> roots, std::vector<Node> nodes) {
  if (slab_y.size() != roots.size()) throw std::invalid_argument("locator: slab/root size mismatch");
  if (!std::is_sorted(slab_y.begin(), slab_y.end())) {
    throw std::invalid_argument("locator: slab boundaries not sorted");
  }
  const auto nn = static_cast<std::int32_t>(nodes.size());
  const auto nc = static_cast<std::int32_t>(curves.size());
  auto ok_ref = [nn](std::int32_t v) { return v >= -1 && v < nn; };
  for (const Node& n : nodes) {
    if (n.curve < 0 || n.curve >= nc || !ok_ref(n.left) || !ok_ref(n.right) ||
        !ok_ref(n.mod_value) || n.mod_field > kRight) {
      throw std::invalid_argument("locator: node table references out of range");
    }
  }
  for (std::int32_t r : roots) {
    if (!ok_ref(r)) throw std::invalid_argument("locator: root out of range");
  }
  CurveLocator out;
  out.curves_ = std::move(curves);
  out.slab_y_ = std::move(slab_y);
  out.roots_ = std::move(roots);
  out.nodes_ = std::move(nodes);
  out.make_hot();
  return out;
}

std::int32_t CurveLocator::first_hit(const Point& q, LocatorStats* stats) const {
  const CurveLocator* self = this;
  Hit out;
  first_hits({&self, 1}, {&q, 1}, {&out, 1}, stats);
  return out.curve;
}

void CurveLocator::first_hits(std::span<const CurveLocator* const> locs, std::span<const Point> qs,
                              std::span<Hit> out, LocatorStats* stats) {
  constexpr std::size_t kMax = 4;
  const std::size_t k = locs.size();
  if (k > kMax || qs.size() != k || out.size() != k) {
    throw std::invalid_argument("locator: bad lockstep batch");
  }
  std::uint64_t cmp = 0;

  // Finished searches keep stepping on a dummy node so the interleaved loops
  // stay free of per-search branches.
  static const Hot kSentinel{0.0, 0.0, 0.0, -1, -1, -1, 0, -1, kNone, false};

  // Slab of q.y: its bucket, then a branch-free upper bound inside it. Each
  // phase runs across all searches before the next so their misses overlap.
  std::size_t base[kMax], len[kMax];
  const SlabRef* table[kMax];
  std::size_t steps = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const CurveLocator& loc = *locs[i];
    table[i] = loc.seg_.data();
    const std::size_t b = loc.bucket_of(qs[i].y());
    base[i] = b;
    __builtin_prefetch(loc.bucket_start_.data() + b);
    steps = std::max(steps, loc.bucket_steps_);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::int32_t* start = locs[i]->bucket_start_.data() + base[i];
    base[i] = static_cast<std::size_t>(start[0]) + 1;
    len[i] = static_cast<std::size_t>(start[1] - start[0]);
    __builtin_prefetch(table[i] + base[i] + len[i] / 2);
  }
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t half = len[i] / 2;
      cmp += len[i] > 0;
      const bool below = len[i] > 0 && table[i][base[i] + half].y <= qs[i].y();
      base[i] = below ? base[i] + half + 1 : base[i];
      len[i] = below ? len[i] - half - 1 : half;
    }
  }

  std::int32_t at[kMax], version[kMax];
  const Hot* node[kMax];
  const Hot* best[kMax];
  for (std::size_t i = 0; i < k; ++i) {
    best[i] = &kSentinel;
    const SlabRef& ref = table[i][base[i] - 1];
    at[i] = ref.root;
    version[i] = ref.version;
    node[i] = at[i] >= 0 ? &locs[i]->hot_[static_cast<std::size_t>(at[i])] : &kSentinel;
  }

  // Within a slab every stored curve spans q.y, so x needs no clamping.
  // Both children are requested before the comparison.
  for (bool active = true; active;) {
    active = false;
    for (std::size_t i = 0; i < k; ++i) {
      const Hot& n = *node[i];
      const Hot* base = locs[i]->hot_.data();
      __builtin_prefetch(base + (n.left >= 0 ? n.left : 0));
      __builtin_prefetch(base + (n.right >= 0 ? n.right : 0));
      cmp += at[i] >= 0;
      const double v = qs[i].y() - n.cy;
      const double w = n.r * n.r - v * v;
      const double round = n.cx + std::sqrt(w > 0.0 ? w : 0.0);
      const double straight = n.cx + n.r * v;
      const bool hit = at[i] >= 0 && (n.arc ? round : straight) > qs[i].x();
      best[i] = hit ? &n : best[i];
      const std::uint8_t field = hit ? kLeft : kRight;
      const std::int32_t child = hit ? n.left : n.right;
      at[i] = n.mod_field == field && n.mod_version <= version[i] ? n.mod_value : child;
      node[i] = at[i] >= 0 ? base + at[i] : &kSentinel;
      active |= at[i] >= 0;
    }
  }
  for (std::size_t i = 0; i < k; ++i) out[i] = Hit{best[i]->curve, best[i]->cx, best[i]->cy, best[i]->r};
  if (stats) stats->comparisons += cmp;
}

std::vector<Curve> map_curves(const ArcMap& map) {
  std::vector<Curve> out;
  out.reserve(map.arcs.size());
  for (std::size_t i = 0; i < map.arcs.size(); ++i) {
    Curve c = arc_curve(map.arcs[i]);
    c.source = static_cast<std::int32_t>(i);
    out.push_back(c);
  }
  return out;
}

Locator::Locator(const ArcMap& map) : Locator(map, CurveLocator(map_curves(map))) {}

Locator::Locator(const ArcMap& map, CurveLocator index) : index_(std::move(index)) {
  owners_.reserve(map.arcs.size());
  for (const Arc& a : map.arcs) owners_.push_back(a.disk.id);
  if (index_.curves().size() != owners_.size()) {
    throw std::invalid_argument("locator: index does not match the map");
  }
}

std::optional<std::size_t> Locator::first_arc(const Point& q, LocatorStats* stats) const {
  const std::int32_t hit = index_.first_hit(q, stats);
  if (hit < 0) return std::nullopt;
  return static_cast<std::size_t>(hit);
}

Locator build_locator(const ArcMap& map) { return Locator(map); }

std::optional<DiskId> first_arc_right(const Locator& loc, const Point& q, LocatorStats* stats) {
  const auto arc = loc.first_arc(q, stats);
  if (!arc) return std::nullopt;
  return loc.owner(*arc);
}

}  // namespace maxdisk
