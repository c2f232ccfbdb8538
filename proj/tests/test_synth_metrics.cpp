#include <doctest.h>

#include <cmath>
#include <random>
#include <map>
#include <set>
#include <span>
#include <sstream>

#include "nusrecon/error.hpp"
#include "nusrecon/fft.hpp"
#include "nusrecon/metrics.hpp"
#include "nusrecon/synth.hpp"
#include "support.hpp"

using namespace nusrecon;

TEST_CASE("make_peaklist draws distinct cells in range") {
  PeakSpec spec;
  spec.n = 64;
  spec.seed = 3;
  const PeakList pl = make_peaklist(spec);
  CHECK(pl.diag.size() == 25);
  CHECK(pl.cross.size() == 50);
  std::set<std::size_t> cells;
  for (const DiagPeak& p : pl.diag) {
    CHECK(p.amplitude >= 9.0);
    CHECK(p.amplitude <= 10.0);
    cells.insert(p.bin * 65u);
  }
  for (const CrossPeak& p : pl.cross) {
    CHECK(p.bin1 != p.bin2);
    CHECK(p.amplitude >= 3.0);
    CHECK(p.amplitude <= 4.0);
    cells.insert(std::min(p.bin1, p.bin2) + 64u * std::max(p.bin1, p.bin2));
  }
  CHECK(cells.size() == 75);
  CHECK(make_peaklist(spec) == pl);
  spec.n_diag = 65;
  CHECK_THROWS_AS(make_peaklist(spec), InvalidParameter);
}

TEST_CASE("synthetic fid is symmetric and normalizes to one") {
  PeakSpec spec;
  spec.n = 48;
  spec.seed = 4;
  const ComplexGrid w = normalize_max(synth_fid(make_peaklist(spec)));
  CHECK(asymmetry_residual(w) == 0.0);
  CHECK(max_abs(w.data()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(normalize_max(ComplexGrid(4)), DegenerateInput);
}

TEST_CASE("single diagonal peak matches the closed form") {
  PeakList pl;
  pl.n = 8;
  pl.decay_alpha = 0.01;
  pl.diag.push_back({3, 2.5});
  const ComplexGrid w = synth_fid(pl);
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t r = 0; r < 8; ++r) {
      const double t1 = static_cast<double>(r + 1), t2 = static_cast<double>(c + 1);
      const cplx want = 2.5 * std::exp(cplx(-0.01 * (t1 + t2), 2 * std::numbers::pi * 3.0 / 8.0 * (t1 + t2)));
      CHECK(std::abs(w(r, c) - want) < 1e-13);
    }
  CHECK(std::abs(w(7, 7)) / std::abs(w(0, 0)) == doctest::Approx(std::exp(-2 * 0.01 * 7)).epsilon(1e-12));
}

TEST_CASE("undecayed peaks land on their bins with height d n") {
  PeakList pl;
  pl.n = 32;
  pl.decay_alpha = 0.0;
  pl.diag.push_back({4, 9.5});
  pl.cross.push_back({2, 20, 3.25});
  const ComplexGrid s = ft2d(synth_fid(pl));
  CHECK(std::abs(s(4, 4)) == doctest::Approx(9.5 * 32).epsilon(1e-12));
  CHECK(std::abs(s(2, 20)) == doctest::Approx(3.25 * 32).epsilon(1e-12));
  CHECK(std::abs(s(20, 2)) == doctest::Approx(3.25 * 32).epsilon(1e-12));
  CHECK(std::abs(s(5, 5)) < 1e-9);
}

TEST_CASE("noise is seeded and has the requested sigma") {
  const ComplexGrid zero(128);
  const ComplexGrid a = add_noise(zero, {0.1, 5});
  CHECK(a == add_noise(zero, {0.1, 5}));
  CHECK(!(a == add_noise(zero, {0.1, 6})));
  double sq = 0;
  for (const cplx& z : a.data()) sq += z.real() * z.real() + z.imag() * z.imag();
  CHECK(std::sqrt(sq / (2.0 * a.size())) == doctest::Approx(0.1).epsilon(0.01));
  CHECK(add_noise(zero, {0.0, 5}) == zero);
  CHECK_THROWS_AS(add_noise(zero, {-1.0, 5}), InvalidParameter);
}

TEST_CASE("peak list manifest roundtrip") {
  PeakSpec spec;
  spec.n = 128;
  spec.seed = 8;
  const PeakList pl = make_peaklist(spec);
  std::stringstream ss;
  write_peaklist(ss, pl);
  CHECK(read_peaklist(ss) == pl);
  std::stringstream bad("# n=8 seed=1 alpha=0\ndiag 0.3 1\n");
  CHECK_THROWS_AS(read_peaklist(bad), FormatError);
}

TEST_CASE("rlne, fit and pearson closed forms") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{3, 5, 7, 9};
  CHECK(rlne(x, x) == 0.0);
  CHECK(rlne(std::vector<double>{2, 0}, std::vector<double>{1, 0}) == doctest::Approx(1.0));
  CHECK(rlne(y, x) == doctest::Approx(std::sqrt(4 + 9 + 16 + 25) / std::sqrt(30.0)));
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(pearson(x, y) == doctest::Approx(1.0));
  CHECK(pearson(x, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
  // x = (1,2,3), y = (1,3,2): r = 0.5
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(rlne(x, std::vector<double>{0, 0, 0, 0}), DegenerateInput);
  CHECK_THROWS_AS(linear_fit(std::vector<double>{1, 1}, std::vector<double>{1, 2}), DegenerateInput);
  CHECK_THROWS_AS(rlne(x, std::span(y).subspan(0, 2)), InvalidParameter);
}

TEST_CASE("compare_amplitudes") {
  const std::vector<double> ref{1, 2, 3};
  const ClassMetrics same = compare_amplitudes(ref, ref);
  CHECK(same.rlne == 0.0);
  CHECK(same.fit_a == doctest::Approx(1.0));
  CHECK(same.fit_b == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.pearson_r == doctest::Approx(1.0));
  const ClassMetrics flat = compare_amplitudes(std::vector<double>{1, 1, 1}, ref);
  CHECK(std::isnan(flat.pearson_r));
  CHECK(flat.fit_a == doctest::Approx(0.0));
}

TEST_CASE("peak amplitudes list cross pairs in both orientations") {
  PeakList pl;
  pl.n = 4;
  pl.diag.push_back({1, 1.0});
  pl.cross.push_back({0, 3, 1.0});
  ComplexGrid s(4);
  s(1, 1) = 5.0;
  s(0, 3) = {0, 2};
  s(3, 0) = -7.0;
  CHECK(peak_amplitudes(s, pl, PeakClass::diag) == std::vector<double>{5.0});
  CHECK(peak_amplitudes(s, pl, PeakClass::cross) == std::vector<double>{2.0, 7.0});
  CHECK(peak_cells(pl, PeakClass::cross) == std::vector<Cell>{{0, 3}, {3, 0}});
}

TEST_CASE("integrate_peaks matches a brute-force 3x3 window") {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  const std::size_t n = 24;
  ComplexGrid s(n);
  for (cplx& z : s.data()) z = u(gen);
  s(5, 7) = 3.0;
  s(0, 0) = 2.0;
  s(23, 12) = {0, 4.0};
  const auto peaks = integrate_peaks(s, 3);
  REQUIRE(peaks.size() == 3);
  for (const PeakIntegral& p : peaks) {
    double want = 0;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc)
        want += std::abs(s((p.cell.row + n + dr) % n, (p.cell.col + n + dc) % n));
    CHECK(p.integral == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK(peaks[0].cell == Cell{0, 0});
  CHECK(peaks[1].cell == Cell{5, 7});
  CHECK(peaks[2].cell == Cell{23, 12});
  CHECK_THROWS_AS(integrate_peaks(s, 2), InvalidParameter);
}

TEST_CASE("mirrored peaks integrate to identical values") {
  std::mt19937_64 gen(11);
  ComplexGrid s = testsupport::random_symmetric_grid(32, gen);
  s(3, 17) = s(17, 3) = 50.0;
  const auto peaks = integrate_peaks(s, 5, 0.0);
  std::map<std::pair<unsigned, unsigned>, double> by_cell;
  for (const PeakIntegral& p : peaks) by_cell[{p.cell.row, p.cell.col}] = p.integral;
  for (const auto& [cell, v] : by_cell) {
    REQUIRE(by_cell.count({cell.second, cell.first}) == 1);
    CHECK(by_cell.at({cell.second, cell.first}) == v);
  }
}
