#pragma once

#include "maxdisk/geom.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace maxdisk {

struct GenOptions {
  std::size_t count = 0;
  std::uint64_t seed = 1;
  double box = 0.0;  // side of the centre square; <= 0 picks 8*sqrt(count)
  double r_min = 1.0;
  double r_max = 10.0;
  double margin = 10.0;  // multiple of the validation tolerances to keep clear
  int max_rounds = 64;
};

/// Uniform real in [0, 1) from the top 53 bits, identical on every platform.
inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Deterministic random instance. Centres are uniform in a square centred at
/// the origin, radii uniform in [r_min, r_max]; offenders against the
/// general-position margins are resampled. Throws std::runtime_error when the
/// margins still fail after max_rounds.
std::vector<Disk> generate_disks(const GenOptions& opt, const Tolerance& tol = kDefaultTolerance);

/// Uniform probes over the padded bounding box of the disks, rejecting those
/// within `margin` of any circle.
std::vector<Point> sample_probes(std::span<const Disk> disks, std::size_t count,
                                 std::uint64_t seed, double margin);

}  // namespace maxdisk
