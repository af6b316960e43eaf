#include "commands.hpp"

#include "maxdisk/dc_builder.hpp"
#include "maxdisk/engine.hpp"
#include "maxdisk/generator.hpp"
#include "maxdisk/naive_builder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

using namespace maxdisk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

// One row per size. Build times are for the right-portion map only.
int run_bench(const BenchArgs& args, std::ostream& out) {
  for (std::size_t n : args.sizes) {
    double naive_s = -1.0, dc_s = 1e300;
    DcStats stats;
    ArcMap map;
    std::vector<Disk> disks;
    for (int rep = 0; rep < args.repeats; ++rep) {
      disks = generate_disks({.count = n, .seed = args.seed + static_cast<std::uint64_t>(rep)});
      auto t0 = Clock::now();
      stats = {};
      map = build_dc(disks, kDefaultTolerance, &stats);
      dc_s = std::min(dc_s, seconds_since(t0));
      if (n <= args.naive_max) {
        t0 = Clock::now();
        const ArcMap ref = build_naive(disks);
        const double s = seconds_since(t0);
        naive_s = naive_s < 0.0 ? s : std::min(naive_s, s);
      }
    }
    const Structure s = preprocess(disks);
    const auto probes = sample_probes(disks, args.queries, args.seed ^ 0x9e37u, 1e-8);
    LocatorStats ls;
    std::size_t found = 0;
    const auto t0 = Clock::now();
    for (const Point& q : probes) found += query(s, q, &ls).id.has_value();
    const double q_s = seconds_since(t0);
    const double nq = static_cast<double>(std::max<std::size_t>(probes.size(), 1));
    out << "n=" << n << " naive_s=" << naive_s << " dc_s=" << dc_s
        << " query_us=" << 1e6 * q_s / nq << " cmp_per_query=" << static_cast<double>(ls.comparisons) / nq
        << " arcs=" << map.arcs.size() << " union_ratio=" << stats.max_union_ratio
        << " work_ratio=" << stats.max_work_ratio << " hits=" << found << '\n';
  }
  return 0;
}
