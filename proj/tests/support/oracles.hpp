#pragma once

// Brute-force reference computations for the tests. These avoid the library's
// own predicates where a test uses them as ground truth.

#include "maxdisk/arcs.hpp"

#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace oracle {

using maxdisk::Arc;
using maxdisk::ArcMap;
using maxdisk::Disk;
using maxdisk::DiskId;
using maxdisk::Point;

// Polar-angle test for the closed right portion.
bool in_right_portion(const Disk& d, const Point& p);

bool in_disk(const Disk& d, const Point& p);

bool in_any_portion(std::span<const Disk> disks, const Point& p);

// Maximal runs of sample angles in [lo, hi] where `outside` holds, as angle
// intervals (lo, hi) bottom to top. Run ends are snapped to sample points.
template <class Pred>
std::vector<std::pair<double, double>> runs(double lo, double hi, int samples, Pred outside) {
  std::vector<std::pair<double, double>> out;
  bool open = false;
  for (int i = 0; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    if (outside(t)) {
      if (!open) out.push_back({t, t});
      out.back().second = t;
      open = true;
    } else {
      open = false;
    }
  }
  return out;
}

Point on_circle(const Disk& d, double theta);

// Rule outcome for a single larger disk, by dense angle sampling.
std::optional<std::pair<double, double>> sampled_rule(const Disk& d, const Disk& big, int samples);

// Fold of sampled_rule over every larger disk.
std::optional<std::pair<double, double>> sampled_fold(const Disk& d, std::span<const Disk> all,
                                                      int samples);

// Disk owning the nearest arc hit by the rightward ray, by scanning every arc.
std::optional<DiskId> first_arc_scan(const ArcMap& m, const Point& q);

// Largest disk containing q by scanning.
std::optional<DiskId> largest_containing(std::span<const Disk> disks, const Point& q);

// True when the two arcs cross at a point interior to both (margin in angle).
bool arcs_cross(const Arc& a, const Arc& b, double margin = 1e-9);

double monte_carlo_union_area(std::span<const Disk> disks, std::size_t samples, std::uint64_t seed);

// Random disks without any general-position screening.
std::vector<Disk> raw_disks(std::size_t n, std::mt19937_64& rng, double box, double rmin, double rmax);

double uniform(std::mt19937_64& rng, double lo, double hi);

// Maximal angle intervals of the right arc of d within [lo, hi] that lie
// outside every portion of `bigs`. Breakpoints come from intersecting d's
// circle with each portion's circle and two radii; each piece is classified
// at its midpoint. Ordered bottom to top.
std::vector<std::pair<double, double>> outside_runs(const Disk& d, double lo, double hi,
                                                    std::span<const Disk> bigs);

// True when p is within eps of the boundary of any right portion.
bool near_portion_boundary(std::span<const Disk> disks, const Point& p, double eps);

// True when q is within eps of any arc's circle or of the height of an arc end.
bool near_map(const ArcMap& m, const Point& q, double eps);

}  // namespace oracle
