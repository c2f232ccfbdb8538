#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nusrecon/grid.hpp"
#include "nusrecon/synth.hpp"

namespace nusrecon {

/// ||x_hat - x||_2 / ||x||_2.
double rlne(std::span<const double> x_hat, std::span<const double> x);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Pearson product-moment correlation.
double pearson(std::span<const double> x, std::span<const double> y);

enum class PeakClass { diag, cross };

const char* to_string(PeakClass c);

/// |spectrum| at each nominal peak cell of the class, in peak list order.
/// Cross pairs contribute (bin1, bin2) then (bin2, bin1).
std::vector<double> peak_amplitudes(const ComplexGrid& spectrum, const PeakList& pl, PeakClass cls);

/// Cells of the class in the same order as peak_amplitudes.
std::vector<Cell> peak_cells(const PeakList& pl, PeakClass cls);

struct PeakIntegral {
  Cell cell;
  double integral = 0.0;
};

/// Local maxima of |spectrum| (>= every 8-neighbour, periodic edges) above
/// floor_factor * median |spectrum|; each integrated as the sum of |value|
/// over the window x window box around it, wrapping at the edges.
std::vector<PeakIntegral> integrate_peaks(const ComplexGrid& spectrum, std::size_t window, double floor_factor = 5.0);

/// Per-class reconstruction quality: reconstructed = slope * reference + intercept.
struct ClassMetrics {
  double rlne = 0.0;
  double fit_a = 0.0;
  double fit_b = 0.0;
  double pearson_r = 0.0;
};

ClassMetrics compare_amplitudes(std::span<const double> reconstructed, std::span<const double> reference);

}  // namespace nusrecon
