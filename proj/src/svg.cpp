#include "maxdisk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace maxdisk {

namespace {

constexpr const char* kFrameColour[3] = {"#d62728", "#1f77b4", "#2ca02c"};
constexpr const char* kFrameName[3] = {"right", "top", "bottom"};

}  // namespace

std::string render_svg(std::span<const Disk> disks, std::span<const ArcMap> maps) {
  double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
  if (!disks.empty()) {
    lo_x = lo_y = 1e300;
    hi_x = hi_y = -1e300;
    for (const Disk& d : disks) {
      lo_x = std::min(lo_x, d.center.x() - d.radius);
      hi_x = std::max(hi_x, d.center.x() + d.radius);
      lo_y = std::min(lo_y, d.center.y() - d.radius);
      hi_y = std::max(hi_y, d.center.y() + d.radius);
    }
  }
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;
  const double w = hi_x - lo_x;
  const double h = hi_y - lo_y;
  const double stroke = std::max(w, h) / 800.0;

  std::ostringstream out;
  out.precision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x << ' ' << -hi_y << ' ' << w
      << ' ' << h << "\">\n";
  // Flip y so the drawing uses the input orientation.
  out << "<g transform=\"scale(1,-1)\" fill=\"none\">\n";
  out << "<g id=\"disks\" stroke=\"#888\" stroke-width=\"" << stroke << "\">\n";
  for (const Disk& d : disks) {
    out << "<circle cx=\"" << d.center.x() << "\" cy=\"" << d.center.y() << "\" r=\"" << d.radius
        << "\"><title>" << d.id << "</title></circle>\n";
  }
  out << "</g>\n";
  for (const ArcMap& m : maps) {
    const int k = frame_index(m.frame);
    const double back = frame_angle(m.frame);
    out << "<g id=\"frame-" << kFrameName[k] << "\" stroke=\"" << kFrameColour[k]
        << "\" stroke-width=\"" << 4 * stroke << "\">\n";
    for (const Arc& a : m.arcs) {
      const Point p0 = rotate_point(a.lower_endpoint(), back);
      const Point p1 = rotate_point(a.upper_endpoint(), back);
      out << "<path d=\"M " << p0.x() << ' ' << p0.y() << " A " << a.disk.radius << ' '
          << a.disk.radius << " 0 0 1 " << p1.x() << ' ' << p1.y() << "\"><title>" << a.disk.id
          << "</title></path>\n";
    }
    out << "</g>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace maxdisk
