#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nusrecon {

using cplx = std::complex<double>;

/// A grid cell, 0-based. `row` indexes the first (t1 / F1) dimension.
struct Cell {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  /// Column-major linear position on an n x n grid.
  std::size_t linear(std::size_t n) const { return row + col * n; }
  Cell mirrored() const { return {col, row}; }
  bool on_diagonal() const { return row == col; }

  static Cell from_linear(std::size_t idx, std::size_t n) {
    return {static_cast<std::uint32_t>(idx % n), static_cast<std::uint32_t>(idx / n)};
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Canonical ordering: column-major (column varies slowest).
inline bool canonical_less(const Cell& a, const Cell& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

/// Square complex array stored column-major. Holds FIDs and spectra alike.
class ComplexGrid {
public:
  /// Zero grid of side n (n >= 2).
  explicit ComplexGrid(std::size_t n);
  /// Takes ownership of column-major data; data.size() must be n*n.
  ComplexGrid(std::size_t n, std::vector<cplx> data);

  std::size_t n() const { return n_; }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row + col * n_]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row + col * n_]; }
  cplx& operator[](const Cell& c) { return data_[c.linear(n_)]; }
  const cplx& operator[](const Cell& c) const { return data_[c.linear(n_)]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::vector<cplx>& storage() { return data_; }

  ComplexGrid& operator+=(const ComplexGrid& o);
  ComplexGrid& operator-=(const ComplexGrid& o);
  ComplexGrid& operator*=(cplx s);

  friend bool operator==(const ComplexGrid&, const ComplexGrid&) = default;

private:
  std::size_t n_;
  std::vector<cplx> data_;
};

ComplexGrid operator+(ComplexGrid a, const ComplexGrid& b);
ComplexGrid operator-(ComplexGrid a, const ComplexGrid& b);
ComplexGrid operator*(cplx s, ComplexGrid a);

struct GridNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

GridNorms norms(const ComplexGrid& g);
double norm_l2(std::span<const cplx> v);
double max_abs(std::span<const cplx> v);

/// Symmetry permutation for diagonal symmetry: the transpose.
ComplexGrid sym_permute(const ComplexGrid& g);

/// max |g - g^T|; zero iff g is symmetric.
double asymmetry_residual(const ComplexGrid& g);

/// Euclidean inner product <a, b> = sum conj(a_k) b_k.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace nusrecon
