#pragma once

#include "maxdisk/arcs.hpp"

#include <span>
#include <vector>

namespace maxdisk {

/// Partial arcs of one disk: `above` folds the rules over larger disks whose
/// centres are higher, `below` over larger disks whose centres are lower. The
/// surviving arc is their intersection.
struct SidedArc {
  Arc above;
  Arc below;

  Arc combined() const { return intersect_arcs(above, below); }
};

/// Quadratic reference construction of the right-portion map.
/// Arcs are sorted by disk id; empty results are omitted.
ArcMap build_naive(std::span<const Disk> disks, const Tolerance& tol = kDefaultTolerance);

/// Sided arcs of every disk, in input order, by the same quadratic fold.
std::vector<SidedArc> naive_sided_arcs(std::span<const Disk> disks,
                                       const Tolerance& tol = kDefaultTolerance);

/// Disks sorted by decreasing radius.
std::vector<Disk> by_radius_desc(std::span<const Disk> disks);

}  // namespace maxdisk
