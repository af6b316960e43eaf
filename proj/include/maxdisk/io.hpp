#pragma once

#include "maxdisk/engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdisk {

/// Malformed input; what() reads "<source>:<line>: <message>".
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline constexpr int kStructureFormatVersion = 2;

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::vector<Disk> read_disks(std::istream& in, const std::string& source = "<input>");
std::vector<Disk> load_disks(const std::filesystem::path& path);
void write_disks(std::ostream& out, std::span<const Disk> disks);

std::vector<Point> read_queries(std::istream& in, const std::string& source = "<input>");
std::vector<Point> load_queries(const std::filesystem::path& path);

/// Structure file: the text line "maxdisk-structure <version>", then
/// little-endian fixed-width tables (disks, then per frame arcs, slabs and
/// locator nodes) and a 4-byte "end\n" marker. Open streams in binary mode.
void write_structure(std::ostream& out, const Structure& s);
Structure read_structure(std::istream& in, const std::string& source = "<input>");
Structure load_structure(const std::filesystem::path& path);

}  // namespace maxdisk
