#include "commands.hpp"

#include "maxdisk/engine.hpp"
#include "maxdisk/generator.hpp"
#include "maxdisk/io.hpp"
#include "maxdisk/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace maxdisk;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

// Writes to `path`, or stdout when empty or "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path, 0, "cannot open for writing");
  write(out);
}

Builder parse_builder(const std::string& s) { return s == "naive" ? Builder::Naive : Builder::DivideConquer; }

bool is_structure_file(const std::string& path) {
  std::ifstream in(path);
  std::string word;
  in >> word;
  return word == "maxdisk-structure";
}

int cmd_gen(const GenOptions& opt, const std::string& out_path) {
  const auto disks = generate_disks(opt);
  with_output(out_path, [&](std::ostream& out) { write_disks(out, disks); });
  return kOk;
}

int cmd_build(const std::string& disk_path, const std::string& builder, const std::string& out_path) {
  const auto disks = load_disks(disk_path);
  const auto t0 = std::chrono::steady_clock::now();
  const Structure s = preprocess(disks, parse_builder(builder));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream buf;
  write_structure(buf, s);
  const std::string text = buf.str();
  if (out_path.empty() || out_path == "-") {
    std::cerr << "no output path given\n";
    return kInputError;
  }
  with_output(out_path, [&](std::ostream& out) { out << text; });
  std::cout << "builder=" << (parse_builder(builder) == Builder::Naive ? "naive" : "dc") << '\n'
            << "disks=" << disks.size() << '\n';
  for (const FrameMap& f : s.frames) {
    std::cout << "arcs_frame" << frame_index(f.map.frame) << '=' << f.map.arcs.size() << '\n';
  }
  std::cout << "locator_entries=" << s.entry_count() << '\n'
            << "bytes=" << text.size() << '\n'
            << "build_seconds=" << secs << '\n';
  return kOk;
}

int cmd_query(const std::string& structure_path, const std::string& query_path,
              const std::string& out_path) {
  const Structure s = load_structure(structure_path);
  const auto queries = load_queries(query_path);
  with_output(out_path, [&](std::ostream& out) {
    for (const Point& q : queries) {
      const QueryAnswer a = query(s, q);
      if (a.id) out << *a.id << '\n';
      else out << "NONE\n";
    }
  });
  return kOk;
}

int cmd_verify(const std::string& disk_path, std::size_t probes, std::uint64_t seed,
               const std::string& builder) {
  const auto disks = load_disks(disk_path);
  const Structure s = preprocess(disks, parse_builder(builder));
  const auto pts = sample_probes(disks, probes, seed, 10.0 * kDefaultTolerance.geom);
  std::size_t mismatches = 0;
  for (const Point& q : pts) {
    const auto got = query(s, q).id;
    const auto want = oracle_query(disks, q).id;
    if (got == want) continue;
    if (mismatches++ == 0) {
      std::cout << "first_mismatch=" << format_double(q.x()) << ',' << format_double(q.y())
                << " got=" << (got ? std::to_string(*got) : "NONE")
                << " want=" << (want ? std::to_string(*want) : "NONE") << '\n';
    }
  }
  std::cout << "probes=" << pts.size() << '\n' << "mismatches=" << mismatches << '\n';
  return mismatches == 0 ? kOk : kVerifyFailed;
}

int cmd_render(const std::string& path, const std::string& out_path) {
  std::vector<Disk> disks;
  std::vector<ArcMap> maps;
  if (is_structure_file(path)) {
    Structure s = load_structure(path);
    disks = s.disks;
    for (FrameMap& f : s.frames) maps.push_back(std::move(f.map));
  } else {
    disks = load_disks(path);
    const Structure s = preprocess(disks);
    for (const FrameMap& f : s.frames) maps.push_back(f.map);
  }
  with_output(out_path, [&](std::ostream& out) { out << render_svg(disks, maps); });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Largest disk containing a query point"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string out_path;
  auto* gen_cmd = app.add_subcommand("gen", "write a random disk file");
  gen_cmd->add_option("--count,-n", gen.count, "number of disks")->required();
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--box", gen.box, "side of the centre square (default 8*sqrt(n))");
  gen_cmd->add_option("--rmin", gen.r_min, "smallest radius");
  gen_cmd->add_option("--rmax", gen.r_max, "largest radius");
  gen_cmd->add_option("--output,-o", out_path, "output file (default stdout)");

  std::string disk_path, structure_path, query_path, builder = "dc";
  auto* build_cmd = app.add_subcommand("build", "preprocess a disk file into a structure file");
  build_cmd->add_option("disks", disk_path)->required();
  build_cmd->add_option("--builder", builder)->check(CLI::IsMember({"naive", "dc"}));
  build_cmd->add_option("--output,-o", out_path, "structure file")->required();

  auto* query_cmd = app.add_subcommand("query", "answer queries from a structure file");
  query_cmd->add_option("structure", structure_path)->required();
  query_cmd->add_option("queries", query_path)->required();
  query_cmd->add_option("--output,-o", out_path, "answers file (default stdout)");

  std::size_t probes = 10000;
  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "compare queries against the linear scan");
  verify_cmd->add_option("disks", disk_path)->required();
  verify_cmd->add_option("--probes", probes);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--builder", builder)->check(CLI::IsMember({"naive", "dc"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "time builds and queries on random instances");
  bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--queries", bench.queries);
  bench_cmd->add_option("--naive-max", bench.naive_max, "skip the naive build above this size");

  std::string render_path;
  auto* render_cmd = app.add_subcommand("render", "draw disks and maps as SVG");
  render_cmd->add_option("input", render_path, "disk file or structure file")->required();
  render_cmd->add_option("--output,-o", out_path, "SVG file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out_path);
    if (*build_cmd) return cmd_build(disk_path, builder, out_path);
    if (*query_cmd) return cmd_query(structure_path, query_path, out_path);
    if (*verify_cmd) return cmd_verify(disk_path, probes, seed, builder);
    if (*bench_cmd) return run_bench(bench, std::cout);
    if (*render_cmd) return cmd_render(render_path, out_path);
  } catch (const ValidationError& e) {
    std::cerr << "invalid instance:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
