// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances and trial counts are fixed here; builds are shared between
// criteria where the sizes overlap.

#include "maxdisk/dc_builder.hpp"
#include "maxdisk/engine.hpp"
#include "maxdisk/generator.hpp"
#include "maxdisk/io.hpp"
#include "maxdisk/naive_builder.hpp"
#include "maxdisk/sector_union.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>

using namespace maxdisk;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;

// criterion 1
constexpr int kOracleInstances = 100;
constexpr std::size_t kOracleSizes[] = {2, 5, 16, 128, 1024, 8192};
constexpr std::size_t kProbes = 10000;
constexpr double kProbeMargin = 10.0 * kDefaultTolerance.geom;
// criterion 2
constexpr int kBuilderInstances = 100;
constexpr std::size_t kBuilderSizes[] = {2, 3, 5, 16, 128, 512, 2000};
constexpr double kAngleTol = 1e-7;
// criterion 3
constexpr std::size_t kCrossingMaxN = 512;
// criterion 4
constexpr int kPropertyTrials = 10000;
constexpr double kComponentTol = 1e-7;
// criterion 5
constexpr double kUnionEdgeFactor = 12.0;
// criterion 6
constexpr double kDcGrowthMax = 20.0;
constexpr double kNaiveGrowthMin = 40.0;
// criterion 7
constexpr std::size_t kLatencyQueries = 50000;
constexpr int kLatencyRounds = 20;
constexpr double kLatencyRatioMax = 4.0;
// criterion 8
constexpr double kMinR2 = 0.99;
constexpr double kLinearSlack = 1.1;
constexpr double kEntriesPerArcMax = 40.0;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Disk> instance(std::size_t n, std::uint64_t seed) {
  GenOptions opt;
  opt.count = n;
  opt.seed = seed;
  return generate_disks(opt);
}

// Large dc structures used by criteria 6 to 8, keyed by log2 n.
struct Built {
  std::vector<Disk> disks;
  std::unique_ptr<Structure> s;
  double seconds = 0.0;
};
std::map<int, Built> big_dc;

Built& dc_structure(int lg) {
  auto it = big_dc.find(lg);
  if (it != big_dc.end()) return it->second;
  Built b;
  b.disks = instance(std::size_t{1} << lg, 7000 + static_cast<std::uint64_t>(lg));
  const auto t0 = Clock::now();
  b.s = std::make_unique<Structure>(preprocess(b.disks, Builder::DivideConquer));
  b.seconds = seconds_since(t0);
  return big_dc.emplace(lg, std::move(b)).first->second;
}

// Small maps kept for the crossing check.
std::vector<ArcMap> small_maps;
std::size_t max_arcs_per_disk = 0;

void note_map(const ArcMap& m, std::size_t n) {
  std::map<DiskId, std::size_t> per;
  for (const Arc& a : m.arcs) max_arcs_per_disk = std::max(max_arcs_per_disk, ++per[a.disk.id]);
  if (n <= kCrossingMaxN) small_maps.push_back(m);
}

void criterion1() {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, probes = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    const std::size_t n = kOracleSizes[static_cast<std::size_t>(i) % std::size(kOracleSizes)];
    const auto seed = 1000 + static_cast<std::uint64_t>(i);
    const auto ds = instance(n, seed);
    const Structure s = preprocess(ds);
    for (const FrameMap& f : s.frames) note_map(f.map, n);
    for (const Point& q : sample_probes(ds, kProbes, seed, kProbeMargin)) {
      ++probes;
      const auto got = query(s, q).id;
      if (got != oracle_query(ds, q).id || got != oracle::largest_containing(ds, q)) ++mismatches;
    }
  }
  report(1, mismatches == 0,
         fmt("instances=%d probes=%zu mismatches=%zu seconds=%.1f", kOracleInstances, probes,
             mismatches, seconds_since(t0)));
}

void criterion2() {
  const auto t0 = Clock::now();
  std::size_t bad = 0, compared = 0;
  double worst = 0.0;
  for (int i = 0; i < kBuilderInstances; ++i) {
    const std::size_t n = kBuilderSizes[static_cast<std::size_t>(i) % std::size(kBuilderSizes)];
    const auto ds = instance(n, 2000 + static_cast<std::uint64_t>(i));
    const ArcMap a = build_dc(ds);
    const ArcMap b = build_naive(ds);
    note_map(a, n);
    if (a.arcs.size() != b.arcs.size()) {
      ++bad;
      continue;
    }
    for (std::size_t k = 0; k < a.arcs.size(); ++k) {
      ++compared;
      const double d = std::max(std::abs(a.arcs[k].lo - b.arcs[k].lo), std::abs(a.arcs[k].hi - b.arcs[k].hi));
      worst = std::max(worst, d);
      if (a.arcs[k].disk.id != b.arcs[k].disk.id || !(d <= kAngleTol)) ++bad;
    }
  }
  report(2, bad == 0,
         fmt("instances=%d arcs=%zu mismatches=%zu max_angle_diff=%.2e seconds=%.1f",
             kBuilderInstances, compared, bad, worst, seconds_since(t0)));
}

void criterion3() {
  std::size_t pairs = 0, crossings = 0;
  for (const ArcMap& m : small_maps) {
    for (std::size_t i = 0; i < m.arcs.size(); ++i) {
      for (std::size_t j = i + 1; j < m.arcs.size(); ++j) {
        ++pairs;
        crossings += oracle::arcs_cross(m.arcs[i], m.arcs[j]);
      }
    }
  }
  report(3, max_arcs_per_disk <= 1 && crossings == 0 && pairs > 0,
         fmt("maps=%zu max_arcs_per_disk=%zu pairs=%zu crossings=%zu", small_maps.size(),
             max_arcs_per_disk, pairs, crossings));
}

Disk random_disk(std::mt19937_64& rng, DiskId id, double rmin, double rmax) {
  return Disk{id, Point(oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3)),
              oracle::uniform(rng, rmin, rmax)};
}

int conjugate_trials(std::mt19937_64& rng) {
  int fails = 0;
  for (int done = 0; done < kPropertyTrials;) {
    const Disk d = random_disk(rng, 0, 0.3, 2.0);
    const Disk big{1, Point(oracle::uniform(rng, -4, 4), oracle::uniform(rng, -4, 4)),
                   d.radius + oracle::uniform(rng, 0.01, 3.0)};
    const bool above = big.center.y() > d.center.y();
    const double half = oracle::uniform(rng, 1e-3, kPi / 3);
    const Point p = oracle::on_circle(d, above ? half : -half);
    if (oracle::in_right_portion(big, p)) continue;
    const Point c = conjugate_point(p, d);
    // too close to the big circle to classify
    if (std::abs((c - big.center).norm() - big.radius) < 1e-9) continue;
    ++done;
    fails += oracle::in_right_portion(big, c);
  }
  return fails;
}

int reach_trials(std::mt19937_64& rng) {
  int fails = 0;
  for (int done = 0; done < kPropertyTrials;) {
    const Disk d = random_disk(rng, 0, 0.2, 3.0);
    const Point p(oracle::uniform(rng, -8, 8), oracle::uniform(rng, -8, 8));
    if (!(dist_x(p, Sector{d}) <= d.radius)) continue;
    ++done;
    fails += !oracle::in_disk(Disk{d.id, d.center, d.radius + 1e-12}, p);
  }
  return fails;
}

int component_trials() {
  int fails = 0;
  int done = 0;
  for (std::uint64_t seed = 1; done < kPropertyTrials; ++seed) {
    const auto ds = by_radius_desc(instance(200, 4000 + seed));
    const auto sided = naive_sided_arcs(ds);
    for (std::size_t i = 0; i < ds.size() && done < kPropertyTrials; ++i) {
      for (const bool above : {true, false}) {
        std::vector<Disk> group;
        for (std::size_t j = 0; j < i; ++j) {
          if ((ds[j].center.y() > ds[i].center.y()) == above) group.push_back(ds[j]);
        }
        const Arc fold = above ? sided[i].above : sided[i].below;
        const Arc full = right_arc(ds[i]);
        const auto runs = oracle::outside_runs(ds[i], full.lo, full.hi, group);
        ++done;
        if (runs.empty() || fold.empty()) {
          // empty exactly when nothing of the arc escapes, up to a dropped sliver
          const double left = runs.empty() ? 0.0 : (above ? runs.front() : runs.back()).second -
                                                        (above ? runs.front() : runs.back()).first;
          fails += !(fold.span() <= kComponentTol && left <= kComponentTol);
          continue;
        }
        const auto want = above ? runs.front() : runs.back();
        fails += !(std::abs(fold.lo - want.first) <= kComponentTol &&
                   std::abs(fold.hi - want.second) <= kComponentTol);
      }
    }
  }
  return fails;
}

int decomposition_trials(std::mt19937_64& rng) {
  int fails = 0;
  int done = 0;
  for (std::uint64_t seed = 1; done < kPropertyTrials; ++seed) {
    const auto ds = by_radius_desc(instance(40, 5000 + seed));
    const auto whole = naive_sided_arcs(ds);
    for (std::size_t i = 1; i < ds.size() && done < kPropertyTrials; ++i) {
      std::vector<std::vector<Disk>> groups(1 + rng() % 5);
      for (std::size_t j = 0; j < i; ++j) groups[rng() % groups.size()].push_back(ds[j]);
      Arc acc = right_arc(ds[i]);
      for (auto& g : groups) {
        g.push_back(ds[i]);
        acc = intersect_arcs(acc, naive_sided_arcs(g).back().combined());
      }
      const Arc want = whole[i].combined();
      ++done;
      if (acc.empty() || want.empty()) {
        fails += acc.empty() != want.empty();
        continue;
      }
      fails += !(std::abs(acc.lo - want.lo) <= 1e-12 && std::abs(acc.hi - want.hi) <= 1e-12);
    }
  }
  return fails;
}

void criterion4() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(44);
  const int conj = conjugate_trials(rng);
  const int reach = reach_trials(rng);
  const int comp = component_trials();
  const int dec = decomposition_trials(rng);
  report(4, conj + reach + comp + dec == 0,
         fmt("trials=%d each; failures conjugate=%d reach=%d lowest_highest=%d "
             "decomposition=%d seconds=%.1f",
             kPropertyTrials, conj, reach, comp, dec, seconds_since(t0)));
}

void criterion5() {
  double worst = 0.0;
  bool ok = true;
  std::string sizes;
  for (int lg = 4; lg <= 12; ++lg) {
    const std::size_t s = std::size_t{1} << lg;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const SectorUnion u = union_of_sectors(instance(s, 6000 + 16 * lg + seed));
      const double ratio = static_cast<double>(u.edge_count()) / static_cast<double>(s);
      worst = std::max(worst, ratio);
      ok = ok && u.edge_count() <= kUnionEdgeFactor * static_cast<double>(s);
    }
  }
  report(5, ok, fmt("s=2^4..2^12 x3 seeds, max edges/s=%.3f (limit %.0f)", worst, kUnionEdgeFactor));
}

double best_build(const std::vector<Disk>& ds, Builder b, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    const Structure s = preprocess(ds, b);
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void criterion6() {
  Built& small = dc_structure(13);
  const double dc_small = std::min(small.seconds, best_build(small.disks, Builder::DivideConquer, 2));
  const double dc_big = dc_structure(16).seconds;
  const double naive_small = best_build(small.disks, Builder::Naive, 3);
  const double naive_big = best_build(big_dc.at(16).disks, Builder::Naive, 1);
  const double dc_ratio = dc_big / dc_small;
  const double naive_ratio = naive_big / naive_small;
  report(6, dc_ratio <= kDcGrowthMax && naive_ratio >= kNaiveGrowthMin,
         fmt("dc %.2fs -> %.2fs ratio=%.2f (<= %.0f); naive %.2fs -> %.2fs ratio=%.2f (>= %.0f)",
             dc_small, dc_big, dc_ratio, kDcGrowthMax, naive_small, naive_big, naive_ratio,
             kNaiveGrowthMin));
}

// Mean microseconds per query over one pass.
double query_pass(const Structure& s, const std::vector<Point>& qs, long& sink) {
  const auto t0 = Clock::now();
  for (const Point& q : qs) sink += query(s, q).id.value_or(-1);
  return seconds_since(t0) / static_cast<double>(qs.size()) * 1e6;
}

void criterion7() {
  bool ok = true;
  std::string counts;
  for (const int lg : {10, 13, 16}) {
    const Structure& s = *dc_structure(lg).s;
    const auto qs = sample_probes(s.disks, 2000, 77, kProbeMargin);
    std::uint64_t worst = 0;
    for (const Point& q : qs) {
      for (const Frame f : {Frame::Right, Frame::Top, Frame::Bottom}) {
        LocatorStats st;
        frame_hit(s, f, q, &st);
        worst = std::max(worst, st.comparisons);
      }
    }
    const double limit = 8.0 * lg + 16.0;
    ok = ok && static_cast<double>(worst) <= limit;
    counts += fmt("n=2^%d max=%llu (<= %.0f) ", lg, static_cast<unsigned long long>(worst), limit);
  }
  // Alternate the two sizes so drift hits both; keep each size's best round.
  const Structure& a = *dc_structure(10).s;
  const Structure& b = *dc_structure(16).s;
  const auto qa = sample_probes(a.disks, kLatencyQueries, 3, kProbeMargin);
  const auto qb = sample_probes(b.disks, kLatencyQueries, 3, kProbeMargin);
  std::vector<double> ta, tb;
  long sink = 0;
  for (int r = 0; r < kLatencyRounds; ++r) {
    ta.push_back(query_pass(a, qa, sink));
    tb.push_back(query_pass(b, qb, sink));
  }
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  const double ratio = tb.front() / ta.front();
  ok = ok && ratio <= kLatencyRatioMax;
  report(7, ok,
         counts + fmt("latency 2^10 %.3fus 2^16 %.3fus ratio=%.2f (<= %.0f; medians %.3f/%.3f) [%ld]",
                      ta.front(), tb.front(), ratio, kLatencyRatioMax, ta[ta.size() / 2],
                      tb[tb.size() / 2], sink % 2));
}

struct Fit {
  double a = 0, b = 0, r2 = 0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  Fit f;
  f.b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.a = (sy - f.b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.a + f.b * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - sy / n) * (y[i] - sy / n);
  }
  f.r2 = 1.0 - ss_res / ss_tot;
  return f;
}

// Each size's slope after removing the fitted offset, relative to the fitted
// slope; a super-linear term shows up as a growing value.
double worst_slope(const std::vector<double>& x, const std::vector<double>& y, const Fit& f) {
  double w = 0;
  for (std::size_t i = 0; i < x.size(); ++i) w = std::max(w, (y[i] - f.a) / (f.b * x[i]));
  return w;
}

void criterion8() {
  std::vector<double> ns, bytes, entries;
  double per_arc = 0;
  for (int lg = 10; lg <= 16; ++lg) {
    const Structure& s = *dc_structure(lg).s;
    std::ostringstream out;
    write_structure(out, s);
    ns.push_back(static_cast<double>(s.disks.size()));
    bytes.push_back(static_cast<double>(out.str().size()));
    entries.push_back(static_cast<double>(s.entry_count()));
    per_arc = std::max(per_arc, static_cast<double>(s.entry_count()) / static_cast<double>(s.arc_count()));
  }
  const Fit fb = linear_fit(ns, bytes);
  const Fit fe = linear_fit(ns, entries);
  const double wb = worst_slope(ns, bytes, fb);
  const double we = worst_slope(ns, entries, fe);
  const bool ok = fb.r2 >= kMinR2 && fe.r2 >= kMinR2 && wb <= kLinearSlack && we <= kLinearSlack &&
                  per_arc <= kEntriesPerArcMax;
  report(8, ok,
         fmt("bytes R2=%.5f slope_ratio=%.3f (%.1f B/disk); entries R2=%.5f slope_ratio=%.3f; "
             "max entries/arc=%.2f (<= %.0f)",
             fb.r2, wb, fb.b, fe.r2, we, per_arc, kEntriesPerArcMax));
}

void criterion9() {
  const auto ds = load_disks(MAXDISK_FIXTURES "/handoff.disks");
  const auto qs = load_queries(MAXDISK_FIXTURES "/handoff.queries");
  const Structure s = preprocess(ds);
  bool ok = qs.size() >= 2;
  std::string detail;
  if (ok) {
    const auto want1 = oracle::largest_containing(ds, qs[0]);
    const auto want2 = oracle::largest_containing(ds, qs[1]);
    const auto right1 = frame_hit(s, Frame::Right, qs[0]);
    const auto right2 = frame_hit(s, Frame::Right, qs[1]);
    const auto full2 = query(s, qs[1]).id;
    ok = want1 && want2 && right1 == want1 && query(s, qs[0]).id == want1 && right2 != want2 &&
         full2 == want2;
    auto str = [](const std::optional<DiskId>& v) { return v ? std::to_string(*v) : std::string("none"); };
    detail = fmt("q1: right-frame=%s answer=%s; q2: right-frame=%s full=%s answer=%s",
                 str(right1).c_str(), str(want1).c_str(), str(right2).c_str(), str(full2).c_str(),
                 str(want2).c_str());
  }
  report(9, ok, detail);
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
  } catch (const std::exception& e) {
    std::printf("aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
