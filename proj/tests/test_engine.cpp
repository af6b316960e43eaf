#include "maxdisk/engine.hpp"
#include "maxdisk/generator.hpp"
#include "maxdisk/io.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace maxdisk;

namespace {

std::vector<Disk> instance(std::size_t n, std::uint64_t seed) {
  GenOptions opt;
  opt.count = n;
  opt.seed = seed;
  return generate_disks(opt);
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& x : v) {
    if (x.find(s) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(std::vector<Disk>{}).empty());
  CHECK(has(validate(std::vector<Disk>{Disk{0, Point(0, 0), 1.0}, Disk{1, Point(5, 3), 1.0}}),
            "radius tie"));
  CHECK(has(validate(std::vector<Disk>{Disk{0, Point(0, 0), 1.0}, Disk{1, Point(5, 0), 2.0}}),
            "y tie (frame 0)"));
  CHECK(has(validate(std::vector<Disk>{Disk{0, Point(0, 0), -1.0}}), "non-positive radius"));
  CHECK(has(validate(std::vector<Disk>{Disk{0, Point(NAN, 0), 1.0}}), "non-finite"));
  CHECK(has(validate(std::vector<Disk>{Disk{0, Point(0, 0), 1.0}, Disk{0, Point(3, 1), 2.0}}),
            "duplicate id"));
  // A tie only visible after rotating by 2pi/3.
  const Point p = rotate_point(Point(4, 0), frame_angle(Frame::Top));
  const auto v = validate(std::vector<Disk>{Disk{0, Point(0, 0), 1.0}, Disk{1, p, 2.0}});
  CHECK(has(v, "y tie (frame 1)"));
  CHECK_FALSE(has(v, "y tie (frame 0)"));

  // Generator output re-checked pair by pair here.
  const auto ds = instance(1000, 4);
  CHECK(validate(ds).empty());
  for (const Frame f : kAllFrames) {
    std::vector<double> ys;
    for (const Disk& d : ds) ys.push_back(rotate_point(d.center, -frame_angle(f)).y());
    std::sort(ys.begin(), ys.end());
    for (std::size_t i = 1; i < ys.size(); ++i) CHECK(ys[i] - ys[i - 1] > 1e-7);
  }
  CHECK_THROWS_AS(preprocess(std::vector<Disk>{Disk{0, Point(0, 0), 1.0}, Disk{1, Point(5, 3), 1.0}}),
                  ValidationError);
}

TEST_CASE("tiny structures") {
  const Structure empty = preprocess(std::vector<Disk>{});
  CHECK_FALSE(query(empty, Point(0, 0)).id);
  const Disk d{7, Point(1, 1), 2.0};
  const Structure one = preprocess(std::vector<Disk>{d});
  for (const FrameMap& f : one.frames) CHECK(f.map.arcs.size() == 1);
  CHECK(query(one, Point(1, 1)).id == DiskId{7});
  CHECK(query(one, Point(0.2, 2.1)).id == DiskId{7});
  CHECK_FALSE(query(one, Point(10, 1)).id);
}

TEST_CASE("oracle_query examples") {
  CHECK_FALSE(oracle_query(std::vector<Disk>{}, Point(0, 0)).id);
  const std::vector<Disk> nested{Disk{1, Point(0, 0), 1.0}, Disk{2, Point(0.2, 0.1), 3.0}};
  CHECK(oracle_query(nested, Point(0, 0)).id == DiskId{2});
  CHECK(oracle_query(nested, Point(2.5, 0)).id == DiskId{2});
  CHECK_FALSE(oracle_query(nested, Point(9, 0)).id);
}

TEST_CASE("queries agree with the linear scan") {
  const auto ds = instance(1000, 77);
  const Structure s = preprocess(ds);
  const auto qs = sample_probes(ds, 10000, 5, 1e-8);
  int mismatches = 0, covered = 0, found = 0;
  for (const Point& q : qs) {
    const QueryAnswer a = query(s, q);
    const auto want = oracle::largest_containing(ds, q);
    mismatches += a.id != want;
    if (want) {
      ++found;
      bool seen = false;
      for (const Frame f : kAllFrames) seen |= frame_hit(s, f, q) == want;
      covered += seen;
    }
  }
  CHECK(mismatches == 0);
  CHECK(covered == found);
  CHECK(found > 1000);
}

TEST_CASE("the dc and naive structures answer alike") {
  const auto ds = instance(300, 8);
  const Structure a = preprocess(ds, Builder::DivideConquer);
  const Structure b = preprocess(ds, Builder::Naive);
  for (const Point& q : sample_probes(ds, 3000, 9, 1e-8)) CHECK(query(a, q).id == query(b, q).id);
}

TEST_CASE("frames are rotations of the right frame") {
  const auto ds = instance(200, 10);
  const Structure s = preprocess(ds);
  for (const Frame f : {Frame::Top, Frame::Bottom}) {
    const auto rotated = frame_disks(ds, f);
    const Structure r = preprocess(rotated);
    for (const Point& q : sample_probes(ds, 2000, 11, 1e-8)) {
      const Point rq = rotate_point(q, -frame_angle(f));
      CHECK(frame_hit(s, f, q) == frame_hit(r, Frame::Right, rq));
    }
  }
}

TEST_CASE("handoff fixture: the right frame alone is not enough") {
  const auto ds = load_disks(MAXDISK_FIXTURES "/handoff.disks");
  const auto qs = load_queries(MAXDISK_FIXTURES "/handoff.queries");
  REQUIRE(qs.size() >= 2);
  const Structure s = preprocess(ds);
  // q1 lies in the right portion of its largest container.
  const auto want1 = oracle::largest_containing(ds, qs[0]);
  REQUIRE(want1);
  CHECK(oracle::in_right_portion(s.disk(*want1), qs[0]));
  CHECK(frame_hit(s, Frame::Right, qs[0]) == want1);
  // q2 does not, and the right map alone points at another disk.
  const auto want2 = oracle::largest_containing(ds, qs[1]);
  REQUIRE(want2);
  CHECK_FALSE(oracle::in_right_portion(s.disk(*want2), qs[1]));
  CHECK(frame_hit(s, Frame::Right, qs[1]) != want2);
  CHECK(query(s, qs[1]).id == want2);
  // Every disk keeps at most one arc per frame.
  for (const FrameMap& f : s.frames) CHECK(f.map.arcs.size() <= ds.size());
}
