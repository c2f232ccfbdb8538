#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nusrecon/grid.hpp"

namespace nusrecon {

// Frequencies are stored as bin numbers N; the frequency in cycles/sample is N / n.
struct DiagPeak {
  std::uint32_t bin = 0;
  double amplitude = 0.0;
  friend bool operator==(const DiagPeak&, const DiagPeak&) = default;
};

struct CrossPeak {
  std::uint32_t bin1 = 0;
  std::uint32_t bin2 = 0;  // != bin1
  double amplitude = 0.0;
  friend bool operator==(const CrossPeak&, const CrossPeak&) = default;
};

struct PeakList {
  std::size_t n = 256;
  std::vector<DiagPeak> diag;
  std::vector<CrossPeak> cross;
  double decay_alpha = 0.001;
  std::uint64_t seed = 0;
  friend bool operator==(const PeakList&, const PeakList&) = default;
};

struct PeakSpec {
  std::size_t n = 256;
  std::size_t n_diag = 25;
  std::size_t n_cross = 50;
  double diag_lo = 9.0, diag_hi = 10.0;
  double cross_lo = 3.0, cross_hi = 4.0;
  double decay_alpha = 0.001;
  std::uint64_t seed = 0;
};

/// Draws peak frequencies uniformly from the grid, rejecting any draw whose
/// cell(s) are already taken, and amplitudes uniformly in their ranges.
PeakList make_peaklist(const PeakSpec& spec);

/// W(t1, t2) = D(t1, t2) + C(t1, t2) + C(t2, t1) with t = 1..n, every peak an
/// exponential exp(2 pi j f t - alpha t) in each dimension. Row index is t1 - 1.
ComplexGrid synth_fid(const PeakList& pl);

/// g / max|g|. Throws DegenerateInput for an all-zero grid.
ComplexGrid normalize_max(const ComplexGrid& g);

struct NoiseSpec {
  double sigma = 0.0;  // per real / imaginary component
  std::uint64_t seed = 0;
};

/// Adds i.i.d. N(0, sigma^2) to the real and imaginary part of every cell.
ComplexGrid add_noise(const ComplexGrid& g, const NoiseSpec& ns);

// Peak list manifest:
//   # n=<n> seed=<seed> alpha=<alpha>
//   diag <f> <d>
//   cross <f1> <f2> <c>
void write_peaklist(std::ostream& os, const PeakList& pl);
PeakList read_peaklist(std::istream& is);
void write_peaklist(const std::filesystem::path& path, const PeakList& pl);
PeakList read_peaklist(const std::filesystem::path& path);

}  // namespace nusrecon
