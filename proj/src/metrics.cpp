#include "nusrecon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nusrecon/error.hpp"

namespace nusrecon {
namespace {

void check_pair(std::span<const double> a, std::span<const double> b, std::size_t min_len) {
  if (a.size() != b.size()) throw InvalidParameter("vector lengths differ");
  if (a.size() < min_len) throw InvalidParameter("vectors too short");
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double rlne(std::span<const double> x_hat, std::span<const double> x) {
  check_pair(x_hat, x, 1);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num += (x_hat[k] - x[k]) * (x_hat[k] - x[k]);
    den += x[k] * x[k];
  }
  if (den == 0.0) throw DegenerateInput("reference vector has zero norm");
  return std::sqrt(num) / std::sqrt(den);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 2);
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0.0) throw DegenerateInput("x has zero variance");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 2);
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

const char* to_string(PeakClass c) { return c == PeakClass::diag ? "diag" : "cross"; }

std::vector<Cell> peak_cells(const PeakList& pl, PeakClass cls) {
  std::vector<Cell> cells;
  if (cls == PeakClass::diag) {
    for (const DiagPeak& p : pl.diag) cells.push_back({p.bin, p.bin});
  } else {
    for (const CrossPeak& p : pl.cross) {
      cells.push_back({p.bin1, p.bin2});
      cells.push_back({p.bin2, p.bin1});
    }
  }
  return cells;
}

std::vector<double> peak_amplitudes(const ComplexGrid& spectrum, const PeakList& pl, PeakClass cls) {
  if (pl.n != spectrum.n()) throw InvalidParameter("peak list and spectrum sizes differ");
  std::vector<double> amps;
  for (const Cell& c : peak_cells(pl, cls)) amps.push_back(std::abs(spectrum[c]));
  return amps;
}

std::vector<PeakIntegral> integrate_peaks(const ComplexGrid& spectrum, std::size_t window, double floor_factor) {
  if (window < 1 || window % 2 == 0) throw InvalidParameter("window must be odd and >= 1");
  const std::size_t n = spectrum.n();
  std::vector<double> mag(n * n);
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(spectrum.data()[k]);

  std::vector<double> sorted = mag;
  auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const double floor = floor_factor * *mid;

  auto at = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    r = ((r % nn) + nn) % nn;
    c = ((c % nn) + nn) % nn;
    return mag[static_cast<std::size_t>(r + c * nn)];
  };

  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  std::vector<PeakIntegral> peaks;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      const double m = mag[r + c * n];
      if (!(m > floor)) continue;
      const auto ri = static_cast<std::ptrdiff_t>(r), ci = static_cast<std::ptrdiff_t>(c);
      bool is_max = true;
      for (std::ptrdiff_t dc = -1; dc <= 1 && is_max; ++dc)
        for (std::ptrdiff_t dr = -1; dr <= 1; ++dr)
          if ((dr || dc) && at(ri + dr, ci + dc) > m) {
            is_max = false;
            break;
          }
      if (!is_max) continue;
      // Summation order is mirrored for mirrored cells, keeping pair integrals equal.
      double sum = 0.0;
      for (std::ptrdiff_t a = -half; a <= half; ++a) {
        double partial = 0.0;
        for (std::ptrdiff_t b = -half; b <= half; ++b)
          partial += r <= c ? at(ri + b, ci + a) : at(ri + a, ci + b);
        sum += partial;
      }
      peaks.push_back({{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)}, sum});
    }
  }
  return peaks;
}

ClassMetrics compare_amplitudes(std::span<const double> reconstructed, std::span<const double> reference) {
  ClassMetrics m;
  m.rlne = rlne(reconstructed, reference);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const LinearFit fit = linear_fit(reference, reconstructed);
    m.fit_a = fit.slope;
    m.fit_b = fit.intercept;
  } catch (const DegenerateInput&) {
    m.fit_a = m.fit_b = nan;
  }
  try {
    m.pearson_r = pearson(reference, reconstructed);
  } catch (const DegenerateInput&) {
    m.pearson_r = nan;
  }
  return m;
}

}  // namespace nusrecon
