#include "nusrecon/nusdata.hpp"

#include <algorithm>

#include "nusrecon/error.hpp"

namespace nusrecon {
namespace {

void check_cell(const Cell& c, std::size_t n) {
  if (c.row >= n || c.col >= n) throw InvalidParameter("index outside the grid");
}

}  // namespace

std::vector<cplx> gather(const ComplexGrid& g, std::span<const Cell> omega) {
  std::vector<cplx> y;
  y.reserve(omega.size());
  for (const Cell& c : omega) {
    check_cell(c, g.n());
    y.push_back(g[c]);
  }
  return y;
}

ComplexGrid scatter(std::span<const Cell> omega, std::span<const cplx> y, std::size_t n) {
  if (omega.size() != y.size()) throw InvalidParameter("omega and y lengths differ");
  ComplexGrid g(n);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    check_cell(omega[k], n);
    g[omega[k]] = y[k];
  }
  return g;
}

NusData build_nusdata(const ComplexGrid& full_fid, const Schedule& sched) {
  if (sched.n != full_fid.n()) throw InvalidParameter("schedule and grid sizes differ");
  const std::size_t n = sched.n;

  std::vector<cplx> values(n * n);
  std::vector<char> carried(n * n, 0);
  for (const Cell& c : sched.acquired) {
    check_cell(c, n);
    values[c.linear(n)] = full_fid[c];
    carried[c.linear(n)] = 1;
  }
  for (const CopyEntry& e : sched.copies) {
    check_cell(e.src, n);
    check_cell(e.dst, n);
    if (!carried[e.src.linear(n)]) throw InvalidParameter("copy source was not acquired");
    values[e.dst.linear(n)] = full_fid[e.src];
    carried[e.dst.linear(n)] = 1;
  }

  NusData d;
  d.n = n;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!carried[k]) continue;
    d.omega.push_back(Cell::from_linear(k, n));
    d.y.push_back(values[k]);
  }
  return d;
}

void validate(const NusData& d) {
  if (d.n < 2) throw InvalidParameter("nus data n must be >= 2");
  if (d.omega.size() != d.y.size()) throw InvalidParameter("omega and y lengths differ");
  for (std::size_t k = 0; k < d.omega.size(); ++k) {
    check_cell(d.omega[k], d.n);
    if (k > 0 && !canonical_less(d.omega[k - 1], d.omega[k]))
      throw InvalidParameter("omega not strictly increasing in canonical order");
  }
}

bool is_transpose_closed(std::span<const Cell> omega, std::size_t n) {
  std::vector<char> in(n * n, 0);
  for (const Cell& c : omega) {
    check_cell(c, n);
    in[c.linear(n)] = 1;
  }
  for (const Cell& c : omega)
    if (!in[c.mirrored().linear(n)]) return false;
  return true;
}

SpisPartition partition_spis(std::span<const Cell> omega, std::size_t n) {
  if (!is_transpose_closed(omega, n)) throw InvalidParameter("omega is not transpose-closed");
  SpisPartition p;
  for (const Cell& c : omega) {
    if (c.on_diagonal())
      p.diagonal.push_back(c);
    else if (c.row < c.col)
      p.upper.push_back(c);
  }
  for (const Cell& c : p.upper) p.lower.push_back(c.mirrored());
  return p;
}

}  // namespace nusrecon
