#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nusrecon/grid.hpp"

namespace nusrecon {

// Binary grid file:
//   "NUSG" | u32 LE n_rows | u32 LE n_cols | n_rows*n_cols x (f64 LE re, f64 LE im)
// values in column-major order. Only square grids are accepted on read.
void write_grid(const std::filesystem::path& path, const ComplexGrid& g);
ComplexGrid read_grid(const std::filesystem::path& path);

// Text debug format: one "row col re im" line per element, 0-based.
void write_grid_text(const std::filesystem::path& path, const ComplexGrid& g);
ComplexGrid read_grid_text(const std::filesystem::path& path);

namespace binio {

inline constexpr char kMagic[4] = {'N', 'U', 'S', 'G'};

void put_u32(std::ostream& os, std::uint32_t v);
void put_f64(std::ostream& os, double v);
std::uint32_t get_u32(std::istream& is);
double get_f64(std::istream& is);

void put_header(std::ostream& os, std::uint32_t n);
// Reads magic and dimensions; returns the side length of the square grid.
std::uint32_t get_header(std::istream& is);

}  // namespace binio
}  // namespace nusrecon
