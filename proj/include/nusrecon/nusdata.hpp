#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "nusrecon/grid.hpp"
#include "nusrecon/schedule.hpp"

namespace nusrecon {

/// Measurement pair (omega, y): the cells carrying data after any symmetric
/// filling, in canonical order, and the samples aligned with them.
struct NusData {
  std::size_t n = 0;
  std::vector<Cell> omega;
  std::vector<cplx> y;

  std::size_t r() const { return omega.size(); }
  friend bool operator==(const NusData&, const NusData&) = default;
};

/// P_Omega: samples of g at omega, in omega's order.
std::vector<cplx> gather(const ComplexGrid& g, std::span<const Cell> omega);

/// P_Omega^H: an n x n grid holding y at omega and zero elsewhere.
ComplexGrid scatter(std::span<const Cell> omega, std::span<const cplx> y, std::size_t n);

/// Applies a schedule to a fully sampled FID. For scpg each copy destination
/// receives the exact value acquired at its source.
NusData build_nusdata(const ComplexGrid& full_fid, const Schedule& sched);

/// Throws InvalidParameter unless omega is strictly increasing in canonical
/// order, in range, and aligned with y.
void validate(const NusData& d);

bool is_transpose_closed(std::span<const Cell> omega, std::size_t n);

struct SpisPartition {
  std::vector<Cell> upper;     // off-diagonal members with row < col
  std::vector<Cell> lower;     // their transposes, same order as `upper`
  std::vector<Cell> diagonal;
};

/// Splits a transpose-closed index set into upper / lower / diagonal parts.
SpisPartition partition_spis(std::span<const Cell> omega, std::size_t n);

// NUS data file: NUSG header | u32 LE r | r x u32 LE column-major linear
// index (canonical order) | r x (f64 LE re, f64 LE im).
void write_nusdata(const std::filesystem::path& path, const NusData& d);
NusData read_nusdata(const std::filesystem::path& path);

}  // namespace nusrecon
