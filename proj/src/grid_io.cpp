#include "nusrecon/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "nusrecon/error.hpp"

namespace nusrecon {
namespace binio {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("unexpected end of file");
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
  return v;
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw FormatError("unexpected end of file");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(v);
}

void put_header(std::ostream& os, std::uint32_t n) {
  os.write(kMagic, 4);
  put_u32(os, n);
  put_u32(os, n);
}

std::uint32_t get_header(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw FormatError("missing NUSG magic");
  const std::uint32_t rows = get_u32(is);
  const std::uint32_t cols = get_u32(is);
  if (rows != cols) throw FormatError("grid is not square");
  if (rows < 2) throw FormatError("grid side must be >= 2");
  return rows;
}

}  // namespace binio

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream os(path, mode | std::ios::out | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream is(path, mode | std::ios::in);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  return is;
}

}  // namespace

void write_grid(const std::filesystem::path& path, const ComplexGrid& g) {
  auto os = open_out(path, std::ios::binary);
  binio::put_header(os, static_cast<std::uint32_t>(g.n()));
  for (const cplx& z : g.data()) {
    binio::put_f64(os, z.real());
    binio::put_f64(os, z.imag());
  }
  if (!os) throw IoError("write failed: " + path.string());
}

ComplexGrid read_grid(const std::filesystem::path& path) {
  auto is = open_in(path, std::ios::binary);
  const std::size_t n = binio::get_header(is);
  std::vector<cplx> data(n * n);
  for (auto& z : data) {
    const double re = binio::get_f64(is);
    const double im = binio::get_f64(is);
    z = {re, im};
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after grid data");
  return ComplexGrid(n, std::move(data));
}

void write_grid_text(const std::filesystem::path& path, const ComplexGrid& g) {
  auto os = open_out(path);
  os << std::setprecision(17);
  const std::size_t n = g.n();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) os << r << ' ' << c << ' ' << g(r, c).real() << ' ' << g(r, c).imag() << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

ComplexGrid read_grid_text(const std::filesystem::path& path) {
  auto is = open_in(path);
  struct Entry {
    std::size_t r, c;
    double re, im;
  };
  std::vector<Entry> entries;
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Entry e;
    if (!(ls >> e.r >> e.c >> e.re >> e.im))
      throw FormatError("bad grid text line " + std::to_string(lineno));
    n = std::max({n, e.r + 1, e.c + 1});
    entries.push_back(e);
  }
  if (entries.size() != n * n) throw FormatError("grid text does not cover a full square grid");
  ComplexGrid g(n);
  std::vector<bool> seen(n * n, false);
  for (const Entry& e : entries) {
    const std::size_t k = e.r + e.c * n;
    if (seen[k]) throw FormatError("duplicate grid text entry");
    seen[k] = true;
    g(e.r, e.c) = {e.re, e.im};
  }
  return g;
}

}  // namespace nusrecon
