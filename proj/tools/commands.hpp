#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

struct BenchArgs {
  std::vector<std::size_t> sizes{1024, 8192, 65536};
  int repeats = 1;
  std::uint64_t seed = 1;
  std::size_t queries = 10000;
  std::size_t naive_max = 65536;
};

int run_bench(const BenchArgs& args, std::ostream& out);
