#pragma once

// Test-side generators and oracles. Nothing here calls into the transform
// code, so the naive DFT can serve as an independent reference.

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nusrecon/grid.hpp"
#include "nusrecon/nusdata.hpp"
#include "nusrecon/rng.hpp"
#include "nusrecon/schedule.hpp"
#include "nusrecon/synth.hpp"

namespace testsupport {

using nusrecon::Cell;
using nusrecon::ComplexGrid;
using nusrecon::cplx;

inline ComplexGrid random_grid(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  ComplexGrid g(n);
  for (cplx& z : g.data()) z = {d(gen), d(gen)};
  return g;
}

inline ComplexGrid random_symmetric_grid(std::size_t n, std::mt19937_64& gen) {
  ComplexGrid g = random_grid(n, gen);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = c + 1; r < n; ++r) g(r, c) = g(c, r);
  return g;
}

/// Unitary 2D DFT straight from the definition, applied as two 1D matrix
/// passes. sign = -1 is the forward transform.
inline ComplexGrid naive_dft2(const ComplexGrid& g, int sign) {
  const std::size_t n = g.n();
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(ang), std::sin(ang)};
  }
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexGrid tmp(n), out(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0;
      for (std::size_t r = 0; r < n; ++r) acc += g(r, c) * w[(k * r) % n];
      tmp(k, c) = acc * s;
    }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0;
      for (std::size_t c = 0; c < n; ++c) acc += tmp(r, c) * w[(k * c) % n];
      out(r, k) = acc * s;
    }
  return out;
}

inline double rel_diff(const ComplexGrid& a, const ComplexGrid& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a.data()[i] - b.data()[i]);
    den += std::norm(b.data()[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// A random sparse symmetric spectrum sampled by an SCPG schedule.
struct ScpgProblem {
  nusrecon::PeakList peaks;
  ComplexGrid fid{2};
  nusrecon::Schedule schedule;
  nusrecon::NusData nus;
};

inline ScpgProblem scpg_problem(std::size_t n, double rate, double sigma, std::uint64_t seed,
                                std::size_t n_diag = 4, std::size_t n_cross = 6, double decay = 0.001) {
  nusrecon::PeakSpec spec;
  spec.n = n;
  spec.n_diag = n_diag;
  spec.n_cross = n_cross;
  spec.decay_alpha = decay;
  spec.seed = seed;
  ScpgProblem p;
  p.peaks = nusrecon::make_peaklist(spec);
  p.fid = nusrecon::add_noise(nusrecon::normalize_max(nusrecon::synth_fid(p.peaks)), {sigma, seed});
  p.schedule = nusrecon::scpg_generate(n, nusrecon::count_for_rate(rate, n), std::numbers::pi, seed);
  p.nus = nusrecon::build_nusdata(p.fid, p.schedule);
  return p;
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("nusrecon_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testsupport
