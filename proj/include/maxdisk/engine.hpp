#pragma once

#include "maxdisk/arcs.hpp"
#include "maxdisk/locator.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace maxdisk {

enum class Builder { Naive, DivideConquer };

/// One rotated frame: the map of its portions and the ray-shooting index.
struct FrameMap {
  ArcMap map;
  Locator locator;
};

struct Structure {
  std::vector<Disk> disks;  // original coordinates
  std::array<FrameMap, 3> frames;
  std::unordered_map<DiskId, std::size_t> by_id;

  const Disk& disk(DiskId id) const { return disks.at(by_id.at(id)); }
  std::size_t arc_count() const noexcept;
  std::size_t entry_count() const noexcept;
};

struct QueryAnswer {
  std::optional<DiskId> id;
  std::array<std::optional<DiskId>, 3> candidates{};  // per-frame locator hits
};

/// General-position violations; empty when the instance is usable.
std::vector<std::string> validate(std::span<const Disk> disks,
                                  const Tolerance& tol = kDefaultTolerance);

/// Disks with centres rotated into frame f.
std::vector<Disk> frame_disks(std::span<const Disk> disks, Frame f);

/// Map of frame f built from the rotated disks.
ArcMap build_frame_map(std::span<const Disk> disks, Frame f, Builder builder = Builder::DivideConquer,
                       const Tolerance& tol = kDefaultTolerance);

/// Validates, then builds all three frames. Throws ValidationError.
Structure preprocess(std::span<const Disk> disks, Builder builder = Builder::DivideConquer,
                     const Tolerance& tol = kDefaultTolerance);

/// Reassembles a structure from already built maps and locators.
Structure assemble(std::vector<Disk> disks, std::array<FrameMap, 3> frames);

QueryAnswer query(const Structure& s, const Point& q, LocatorStats* stats = nullptr);

/// Locator hit of a single frame, without the containment filter.
std::optional<DiskId> frame_hit(const Structure& s, Frame f, const Point& q,
                                LocatorStats* stats = nullptr);

/// Linear scan for the largest disk containing q.
QueryAnswer oracle_query(std::span<const Disk> disks, const Point& q);

}  // namespace maxdisk
