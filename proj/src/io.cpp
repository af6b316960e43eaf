#include "maxdisk/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace maxdisk {

InputError::InputError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// Whitespace-separated tokens of one line, with '#' comments removed.
std::vector<std::string_view> tokens(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t j = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > j) out.push_back(line.substr(j, i - j));
  }
  return out;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank line's tokens; false at end of input.
  bool next(std::vector<std::string_view>& out) {
    while (std::getline(in_, buf_)) {
      ++line_;
      if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
      out = tokens(buf_);
      if (!out.empty()) return true;
    }
    return false;
  }

  void expect(std::vector<std::string_view>& out, const char* what) {
    if (!next(out)) fail(std::string("unexpected end of input, expected ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw InputError(source_, line_, msg); }

  double real(std::string_view t) const {
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail("invalid number '" + std::string(t) + "'");
    }
    return v;
  }

  std::int64_t integer(std::string_view t) const {
    std::int64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail("invalid integer '" + std::string(t) + "'");
    }
    return v;
  }

  void arity(const std::vector<std::string_view>& t, std::size_t n, const char* what) const {
    if (t.size() != n) {
      fail(std::string("expected ") + std::to_string(n) + " fields (" + what + "), got " +
           std::to_string(t.size()));
    }
  }

  void keyword(const std::vector<std::string_view>& t, std::string_view kw) const {
    if (t.empty() || t[0] != kw) fail("expected '" + std::string(kw) + "'");
  }

  std::size_t count(std::string_view t) const {
    const std::int64_t v = integer(t);
    if (v < 0) fail("negative count");
    return static_cast<std::size_t>(v);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::string buf_;
  std::size_t line_ = 0;
};

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace

std::vector<Disk> read_disks(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Disk> out;
  std::vector<std::string_view> t;
  while (r.next(t)) {
    r.arity(t, 4, "id x y r");
    Disk d;
    d.id = r.integer(t[0]);
    d.center = Point(r.real(t[1]), r.real(t[2]));
    d.radius = r.real(t[3]);
    out.push_back(d);
  }
  return out;
}

std::vector<Disk> load_disks(const std::filesystem::path& path) {
  auto in = open(path);
  return read_disks(in, path.string());
}

void write_disks(std::ostream& out, std::span<const Disk> disks) {
  out << "# id x y r\n";
  for (const Disk& d : disks) {
    out << d.id << ' ' << format_double(d.center.x()) << ' ' << format_double(d.center.y()) << ' '
        << format_double(d.radius) << '\n';
  }
}

std::vector<Point> read_queries(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Point> out;
  std::vector<std::string_view> t;
  while (r.next(t)) {
    r.arity(t, 2, "x y");
    out.emplace_back(r.real(t[0]), r.real(t[1]));
  }
  return out;
}

std::vector<Point> load_queries(const std::filesystem::path& path) {
  auto in = open(path);
  return read_queries(in, path.string());
}

namespace {

constexpr char kStructureMagic[] = "maxdisk-structure";
constexpr char kStructureEnd[4] = {'e', 'n', 'd', '\n'};

// Fixed-width little-endian fields, so the file size is a linear function of
// the table sizes.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void u64(std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>(v >> (8 * i));
    out_.write(b, 8);
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void i32(std::int32_t v) {
    const auto u = static_cast<std::uint32_t>(v);
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>(u >> (8 * i));
    out_.write(b, 4);
  }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(source_, 0, "byte " + std::to_string(offset_) + ": " + msg);
  }

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) fail("unexpected end of input");
    offset_ += n;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::int32_t i32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return static_cast<std::int32_t>(v);
  }
  std::uint8_t u8() {
    char c;
    bytes(&c, 1);
    return static_cast<std::uint8_t>(c);
  }
  double f64() { return std::bit_cast<double>(u64()); }

  // Element count, bounded by what the stream could still hold.
  std::size_t count(std::size_t min_bytes_each) {
    const std::uint64_t v = u64();
    if (v > (std::uint64_t{1} << 40) / std::max<std::size_t>(1, min_bytes_each)) {
      fail("implausible count " + std::to_string(v));
    }
    return static_cast<std::size_t>(v);
  }

  void set_offset(std::size_t o) { offset_ = o; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t offset_ = 0;
};

}  // namespace

void write_structure(std::ostream& out, const Structure& s) {
  out << kStructureMagic << ' ' << kStructureFormatVersion << '\n';
  BinaryWriter w(out);
  w.u64(s.disks.size());
  for (const Disk& d : s.disks) {
    w.i64(d.id);
    w.f64(d.center.x());
    w.f64(d.center.y());
    w.f64(d.radius);
  }
  for (const FrameMap& fm : s.frames) {
    w.u8(static_cast<std::uint8_t>(frame_index(fm.map.frame)));
    w.u64(fm.map.arcs.size());
    for (const Arc& a : fm.map.arcs) {
      w.i64(a.disk.id);
      w.f64(a.lo);
      w.f64(a.hi);
    }
    const CurveLocator& idx = fm.locator.index();
    w.u64(idx.slab_y().size());
    for (std::size_t i = 0; i < idx.slab_y().size(); ++i) {
      w.f64(idx.slab_y()[i]);
      w.i32(idx.roots()[i]);
    }
    w.u64(idx.nodes().size());
    for (const CurveLocator::Node& n : idx.nodes()) {
      w.i32(n.curve);
      w.i32(n.left);
      w.i32(n.right);
      w.i32(n.mod_version);
      w.i32(n.mod_value);
      w.u8(n.mod_field);
    }
  }
  out.write(kStructureEnd, sizeof kStructureEnd);
}

Structure read_structure(std::istream& in, const std::string& source) {
  std::string header;
  if (!std::getline(in, header)) throw InputError(source, 1, "empty input, expected header");
  {
    const auto t = tokens(header);
    if (t.size() != 2 || t[0] != kStructureMagic) {
      throw InputError(source, 1, "expected 'maxdisk-structure <version>'");
    }
    if (t[1] != std::to_string(kStructureFormatVersion)) {
      throw InputError(source, 1, "unsupported format version " + std::string(t[1]));
    }
  }
  BinaryReader r(in, source);
  r.set_offset(header.size() + 1);

  const std::size_t n = r.count(32);
  std::vector<Disk> disks;
  disks.reserve(n);
  std::unordered_map<DiskId, std::size_t> by_id;
  for (std::size_t i = 0; i < n; ++i) {
    Disk d;
    d.id = r.i64();
    d.center.x() = r.f64();
    d.center.y() = r.f64();
    d.radius = r.f64();
    if (!by_id.emplace(d.id, i).second) r.fail("duplicate disk id");
    disks.push_back(d);
  }

  std::array<FrameMap, 3> frames;
  for (Frame f : kAllFrames) {
    if (r.u8() != frame_index(f)) r.fail("frames out of order");
    const std::size_t m = r.count(24);
    const double theta = -frame_angle(f);
    ArcMap map;
    map.frame = f;
    map.arcs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto it = by_id.find(r.i64());
      if (it == by_id.end()) r.fail("arc of unknown disk");
      const Disk& d = disks[it->second];
      const double lo = r.f64();
      const double hi = r.f64();
      const Arc a{f == Frame::Right ? d : rotate_disk(d, theta), lo, hi};
      if (!(a.lo >= -kThird - 1e-12 && a.lo <= a.hi && a.hi <= kThird + 1e-12)) {
        r.fail("arc angles out of range");
      }
      map.arcs.push_back(a);
    }

    const std::size_t ns = r.count(12);
    std::vector<double> slab_y(ns);
    std::vector<std::int32_t> roots(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      slab_y[i] = r.f64();
      roots[i] = r.i32();
    }

    const std::size_t nn = r.count(21);
    std::vector<CurveLocator::Node> nodes(nn);
    for (CurveLocator::Node& nd : nodes) {
      nd.curve = r.i32();
      nd.left = r.i32();
      nd.right = r.i32();
      nd.mod_version = r.i32();
      nd.mod_value = r.i32();
      nd.mod_field = r.u8();
    }

    FrameMap& fm = frames[static_cast<std::size_t>(frame_index(f))];
    try {
      CurveLocator idx = CurveLocator::from_tables(map_curves(map), std::move(slab_y),
                                                   std::move(roots), std::move(nodes));
      fm.locator = Locator(map, std::move(idx));
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    fm.map = std::move(map);
  }
  char end[sizeof kStructureEnd];
  r.bytes(end, sizeof end);
  if (!std::equal(end, end + sizeof end, kStructureEnd)) r.fail("missing end marker");
  return assemble(std::move(disks), std::move(frames));
}

Structure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  return read_structure(in, path.string());
}

}  // namespace maxdisk
