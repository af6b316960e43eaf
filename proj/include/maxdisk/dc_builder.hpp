#pragma once

#include "maxdisk/arcs.hpp"
#include "maxdisk/naive_builder.hpp"
#include "maxdisk/sector_union.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace maxdisk {

/// Balanced tree over disks sorted by centre y, stored heap style: node 1 is
/// the root, node j has children 2j and 2j+1, and the leaves are the nodes
/// [width, 2*width). Leaves past the real disk count are padding.
class YTree {
 public:
  YTree() = default;
  explicit YTree(std::span<const Disk> disks);

  const std::vector<Disk>& leaves() const noexcept { return leaves_; }
  std::size_t width() const noexcept { return width_; }
  int depth() const noexcept { return depth_; }
  int level(std::size_t node) const noexcept;

  /// Leaf positions [first, last) below `node`, clipped to the real leaves.
  std::pair<std::size_t, std::size_t> leaf_range(std::size_t node) const noexcept;

  /// Number of leaves whose centre is strictly below y.
  std::size_t rank(double y) const noexcept;

  /// The canonical node at `level` of the cover of the leaves with centre
  /// strictly above (`above`) or below a centre of rank r; 0 when the cover
  /// has no node there.
  std::size_t cover_node(std::size_t r, bool above, int level) const noexcept;

  /// All canonical nodes of that cover, root first.
  std::vector<std::size_t> cover(std::size_t r, bool above) const;

 private:
  std::vector<Disk> leaves_;
  std::size_t width_ = 1;
  int depth_ = 0;
};

enum class Side { Above, Below };

/// bucket[node] lists the positions in `disks` assigned to that node.
struct BucketAssignment {
  std::vector<std::vector<std::size_t>> buckets;
};

BucketAssignment assign_buckets(const YTree& tree, std::span<const Disk> disks, Side side);

struct EscapeStats {
  std::uint64_t sweep_events = 0;
};

/// For each arc, the lowest connected component of (arc minus u), possibly
/// empty. The arcs may cross each other; every member of u must be larger than
/// every arc's disk.
std::vector<Arc> lowest_escape_subarcs(std::span<const Arc> arcs, const SectorUnion& u,
                                       EscapeStats* stats = nullptr);

/// Same with the highest component (the y-mirrored sweep).
std::vector<Arc> highest_escape_subarcs(std::span<const Arc> arcs, const SectorUnion& u,
                                        EscapeStats* stats = nullptr);

struct SidedArcMap {
  Frame frame = Frame::Right;
  std::vector<SidedArc> arcs;
};

struct DcStats {
  std::size_t merges = 0;
  double max_work_ratio = 0.0;  // (sum |D_v| + |S_v|) / (n log2 n) per merge
  std::uint64_t sweep_events = 0;
  double max_union_ratio = 0.0;  // boundary edges per member sector
};

/// Trims the sided arcs of the smaller disks against all of d_plus.
/// Returns the trimmed arcs of m_minus, in the same order.
SidedArcMap merge_maps(const SidedArcMap& m_minus, std::span<const Disk> d_plus,
                       DcStats* stats = nullptr);

/// Divide-and-conquer construction of the right-portion map; same output
/// contract as build_naive.
ArcMap build_dc(std::span<const Disk> disks, const Tolerance& tol = kDefaultTolerance,
                DcStats* stats = nullptr);

}  // namespace maxdisk
