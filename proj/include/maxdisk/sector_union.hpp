#pragma once

#include "maxdisk/arcs.hpp"
#include "maxdisk/curve.hpp"
#include "maxdisk/locator.hpp"

#include <memory>
#include <span>
#include <vector>

namespace maxdisk {

/// Boundary of a union of right portions of disks.
///
/// Edges are y-monotone pieces of sector radii and right arcs. Each edge
/// records on which side the union lies (`Curve::interior_right`) and, in
/// `Curve::source`, the index into members() of the disk it comes from.
class SectorUnion {
 public:
  SectorUnion() = default;
  SectorUnion(std::vector<Curve> edges, std::vector<Disk> members);

  static SectorUnion of_sector(const Disk& d);

  const std::vector<Curve>& edges() const noexcept { return edges_; }
  const std::vector<Disk>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Closed-union membership through the nearest boundary edge to the right.
  /// The first call builds a slab locator over the edges.
  bool contains(const Point& p) const;

  /// Rightward distance from p to the union (0 inside).
  double dist_x(const Point& p) const;

  /// Edge indices grouped into closed chains, each in boundary order.
  std::vector<std::vector<std::size_t>> chains(double tol = 1e-7) const;

  /// Area from the boundary (sum of signed integrals of x dy).
  double area() const;

  /// The union reflected through the x-axis.
  SectorUnion mirrored() const;

 private:
  struct Index;
  const CurveLocator& index() const;

  std::vector<Curve> edges_;
  std::vector<Disk> members_;
  std::shared_ptr<Index> index_;
};

struct UnionStats {
  std::uint64_t sweep_events = 0;
  std::uint64_t crossings = 0;
};

SectorUnion union_of_sectors(std::span<const Disk> disks, UnionStats* stats = nullptr);

/// Set union of two boundaries by one sweep over their overlay.
SectorUnion merge_unions(const SectorUnion& u1, const SectorUnion& u2,
                         UnionStats* stats = nullptr);

bool point_in_union(const SectorUnion& u, const Point& p);

const std::vector<Curve>& boundary_edges(const SectorUnion& u);

double dist_x(const Point& p, const SectorUnion& u);

}  // namespace maxdisk
