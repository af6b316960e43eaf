#pragma once

#include "maxdisk/curve.hpp"

#include <cstdint>
#include <vector>

namespace maxdisk::detail {

// Callbacks of the red/blue sweep. Ids index the curve list given to the
// sweep; colour 0 is red, 1 is blue.
class SweepListener {
 public:
  virtual ~SweepListener() = default;
  // Called before a curve enters the status. `nearest_other` is the first
  // curve of the other colour strictly right of the curve's lower endpoint
  // (-1 if none); only computed for colours listed in `locate`.
  // Returning false skips the curve.
  virtual bool on_start(std::int32_t /*id*/, std::int32_t /*nearest_other*/) { return true; }
  // A red curve crossed a blue one at height y. Returning false removes the
  // red curve from the sweep.
  virtual bool on_cross(std::int32_t /*red*/, std::int32_t /*blue*/, double /*y*/) { return true; }
};

struct SweepStats {
  std::uint64_t events = 0;
  std::uint64_t crossings = 0;
};

// Upward sweep over y-monotone curves, reporting red/blue crossings in
// increasing y. Curves of one colour must not cross unless
// `self_cross[colour]` is set; those crossings are processed (swapped) but
// not reported. Curves starting with colour c get `nearest_other` when
// locate[c] is set; the other colour must then be crossing-free. Red/blue
// tangencies raise DegenerateInput.
void red_blue_sweep(const std::vector<Curve>& curves, const std::vector<std::uint8_t>& colour,
                    std::array<bool, 2> self_cross, std::array<bool, 2> locate,
                    SweepListener& listener,
                    SweepStats* stats = nullptr);

}  // namespace maxdisk::detail
