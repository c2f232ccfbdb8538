#include "nusrecon/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nusrecon/error.hpp"

namespace nusrecon {

ComplexGrid::ComplexGrid(std::size_t n) : ComplexGrid(n, std::vector<cplx>(n * n)) {}

ComplexGrid::ComplexGrid(std::size_t n, std::vector<cplx> data) : n_(n), data_(std::move(data)) {
  if (n < 2) throw InvalidParameter("grid side must be >= 2, got " + std::to_string(n));
  if (data_.size() != n * n)
    throw InvalidParameter("grid data length " + std::to_string(data_.size()) + " != n^2 for n=" +
                           std::to_string(n));
}

ComplexGrid& ComplexGrid::operator+=(const ComplexGrid& o) {
  if (o.n_ != n_) throw InvalidParameter("grid size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexGrid& ComplexGrid::operator-=(const ComplexGrid& o) {
  if (o.n_ != n_) throw InvalidParameter("grid size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexGrid& ComplexGrid::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexGrid operator+(ComplexGrid a, const ComplexGrid& b) { return a += b; }
ComplexGrid operator-(ComplexGrid a, const ComplexGrid& b) { return a -= b; }
ComplexGrid operator*(cplx s, ComplexGrid a) { return a *= s; }

GridNorms norms(const ComplexGrid& g) {
  GridNorms r;
  double ss = 0.0;
  for (const cplx& z : g.data()) {
    const double m = std::abs(z);
    r.l1 += m;
    ss += std::norm(z);
    r.linf = std::max(r.linf, m);
  }
  r.l2 = std::sqrt(ss);
  return r;
}

double norm_l2(std::span<const cplx> v) {
  double ss = 0.0;
  for (const cplx& z : v) ss += std::norm(z);
  return std::sqrt(ss);
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

ComplexGrid sym_permute(const ComplexGrid& g) {
  const std::size_t n = g.n();
  ComplexGrid t(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) t(c, r) = g(r, c);
  return t;
}

double asymmetry_residual(const ComplexGrid& g) {
  const std::size_t n = g.n();
  double m = 0.0;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = c + 1; r < n; ++r) m = std::max(m, std::abs(g(r, c) - g(c, r)));
  return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidParameter("inner product length mismatch");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

}  // namespace nusrecon
