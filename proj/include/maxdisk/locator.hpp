#pragma once

#include "maxdisk/arcs.hpp"
#include "maxdisk/curve.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace maxdisk {

namespace detail {

void* huge_alloc(std::size_t bytes);
void huge_free(void* p) noexcept;

// Backs large search tables with transparent huge pages where available;
// queries touch them at random, so TLB misses would otherwise dominate.
template <class T>
struct HugePageAllocator {
  using value_type = T;
  HugePageAllocator() = default;
  template <class U>
  HugePageAllocator(const HugePageAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(huge_alloc(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { huge_free(p); }
  template <class U>
  bool operator==(const HugePageAllocator<U>&) const noexcept { return true; }
};

}  // namespace detail

struct LocatorStats {
  std::uint64_t comparisons = 0;
};

/// Rightward ray shooting among pairwise non-crossing y-monotone curves.
///
/// Curves may touch (share endpoints, or end on another curve's interior) but
/// must not cross. The structure is a sweep over the curve endpoints in y; the
/// left-to-right order of the curves in each slab is kept in a partially
/// persistent red-black tree using node copying, so every slab shares structure with
/// the previous one and the total size stays linear in the number of curves.
class CurveLocator {
 public:
  enum Field : std::uint8_t { kNone = 0, kLeft = 1, kRight = 2 };

  struct Node {
    std::int32_t curve = -1;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t mod_version = 0;
    std::int32_t mod_value = -1;
    std::uint8_t mod_field = kNone;
  };

  CurveLocator() { make_hot(); }
  explicit CurveLocator(std::vector<Curve> curves);

  /// Rebuilds a locator from serialised tables; throws std::invalid_argument on
  /// inconsistent tables.
  static CurveLocator from_tables(std::vector<Curve> curves, std::vector<double> slab_y,
                                  std::vector<std::int32_t> roots, std::vector<Node> nodes);

  /// Index of the curve nearest to q among those crossing the horizontal line
  /// through q strictly to its right, or -1 when the ray misses every curve.
  /// Queries on a slab boundary resolve to the slab above.
  std::int32_t first_hit(const Point& q, LocatorStats* stats = nullptr) const;
  /// A located curve with its defining circle or line (cx, cy, r as in Curve).
  struct Hit {
    std::int32_t curve = -1;
    double cx = 0.0, cy = 0.0, r = 0.0;
  };
  // Several independent searches run in lockstep so their memory stalls
  // overlap; out[i] answers locs[i] for qs[i]. At most 4 searches.
  static void first_hits(std::span<const CurveLocator* const> locs, std::span<const Point> qs,
                         std::span<Hit> out, LocatorStats* stats = nullptr);

  const std::vector<Curve>& curves() const noexcept { return curves_; }
  const std::vector<double>& slab_y() const noexcept { return slab_y_; }
  const std::vector<std::int32_t>& roots() const noexcept { return roots_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// Persistent nodes plus slab table entries.
  std::size_t entry_count() const noexcept { return nodes_.size() + slab_y_.size(); }

 private:
  // Node plus the geometry of its curve, one cache line per step of a search.
  struct alignas(64) Hot {
    double cx, cy, r;
    std::int32_t curve, left, right, mod_version, mod_value;
    std::uint8_t mod_field;
    bool arc;
  };

  struct SlabRef {
    double y;
    std::int32_t root;
    std::int32_t version;
  };

  void build();
  void make_hot();
  std::size_t bucket_of(double y) const noexcept {
    const double t = (y - bucket_y0_) * bucket_scale_;
    if (!(t >= 0.0)) return 0;
    const std::size_t last = bucket_start_.size() - 2;
    return t >= static_cast<double>(last) ? last : static_cast<std::size_t>(t);
  }

  std::vector<Hot, detail::HugePageAllocator<Hot>> hot_;
  // seg_[0] lies below every boundary, seg_[k] starts at slab_y_[k-1], and a
  // +inf sentinel closes the table.
  std::vector<SlabRef, detail::HugePageAllocator<SlabRef>> seg_;
  // Uniform buckets over the boundary heights: bucket b holds boundaries
  // bucket_start_[b] .. bucket_start_[b+1]-1, so a search only scans one bucket.
  std::vector<std::int32_t, detail::HugePageAllocator<std::int32_t>> bucket_start_;
  double bucket_y0_ = 0.0;
  double bucket_scale_ = 0.0;
  std::size_t bucket_steps_ = 0;  // binary-search steps for the fullest bucket
  std::vector<Curve> curves_;
  std::vector<double> slab_y_;  // version v is valid on [slab_y_[v], slab_y_[v+1])
  std::vector<std::int32_t> roots_;
  std::vector<Node> nodes_;
};

/// First-arc-hit structure over an ArcMap.
class Locator {
 public:
  Locator() = default;
  explicit Locator(const ArcMap& map);
  Locator(const ArcMap& map, CurveLocator index);

  /// Position in the map's arc list of the first arc hit, if any.
  std::optional<std::size_t> first_arc(const Point& q, LocatorStats* stats = nullptr) const;

  const CurveLocator& index() const noexcept { return index_; }
  std::size_t arc_count() const noexcept { return owners_.size(); }
  DiskId owner(std::size_t arc) const { return owners_.at(arc); }
  std::size_t entry_count() const noexcept { return index_.entry_count(); }

 private:
  std::vector<DiskId> owners_;
  CurveLocator index_;
};

/// Curves of the map's arcs, in map order with `source` set to the arc index.
std::vector<Curve> map_curves(const ArcMap& map);

Locator build_locator(const ArcMap& map);

std::optional<DiskId> first_arc_right(const Locator& loc, const Point& q,
                                      LocatorStats* stats = nullptr);

}  // namespace maxdisk
