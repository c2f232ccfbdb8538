#include <fstream>

#include "nusrecon/error.hpp"
#include "nusrecon/grid_io.hpp"
#include "nusrecon/nusdata.hpp"

namespace nusrecon {

void write_nusdata(const std::filesystem::path& path, const NusData& d) {
  validate(d);
  std::ofstream os(path, std::ios::binary | std::ios::out | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  binio::put_header(os, static_cast<std::uint32_t>(d.n));
  binio::put_u32(os, static_cast<std::uint32_t>(d.r()));
  for (const Cell& c : d.omega) binio::put_u32(os, static_cast<std::uint32_t>(c.linear(d.n)));
  for (const cplx& z : d.y) {
    binio::put_f64(os, z.real());
    binio::put_f64(os, z.imag());
  }
  if (!os) throw IoError("write failed: " + path.string());
}

NusData read_nusdata(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  NusData d;
  d.n = binio::get_header(is);
  const std::uint32_t r = binio::get_u32(is);
  if (r > d.n * d.n) throw FormatError("sample count exceeds grid size");
  d.omega.reserve(r);
  for (std::uint32_t k = 0; k < r; ++k) {
    const std::uint32_t lin = binio::get_u32(is);
    if (lin >= d.n * d.n) throw FormatError("linear index outside the grid");
    d.omega.push_back(Cell::from_linear(lin, d.n));
  }
  d.y.reserve(r);
  for (std::uint32_t k = 0; k < r; ++k) {
    const double re = binio::get_f64(is);
    const double im = binio::get_f64(is);
    d.y.emplace_back(re, im);
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after nus data");
  try {
    validate(d);
  } catch (const InvalidParameter& e) {
    throw FormatError(e.what());
  }
  return d;
}

}  // namespace nusrecon
