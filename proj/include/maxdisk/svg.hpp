#pragma once

#include "maxdisk/arcs.hpp"

#include <span>
#include <string>

namespace maxdisk {

/// SVG with thin disk outlines and one toggleable group of thick map arcs
/// per frame. Map arcs may live in rotated frames; they are drawn rotated
/// back into the input coordinates.
std::string render_svg(std::span<const Disk> disks, std::span<const ArcMap> maps);

}  // namespace maxdisk
