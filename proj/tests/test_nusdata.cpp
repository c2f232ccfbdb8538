#include <doctest.h>

#include <cstring>
#include <numbers>
#include <random>

#include "nusrecon/error.hpp"
#include "nusrecon/fft.hpp"
#include "nusrecon/nusdata.hpp"
#include "support.hpp"

using namespace nusrecon;

TEST_CASE("gather follows omega order") {
  ComplexGrid g(4);
  for (std::size_t i = 0; i < 16; ++i) g.data()[i] = static_cast<double>(i);
  const std::vector<Cell> omega{{0, 0}, {3, 0}, {2, 1}, {0, 2}, {2, 2}, {3, 3}};
  const auto y = gather(g, omega);
  const std::vector<cplx> want{0.0, 3.0, 6.0, 8.0, 10.0, 15.0};
  CHECK(y == want);
  const ComplexGrid back = scatter(omega, y, 4);
  for (const Cell& c : omega) CHECK(back[c] == g[c]);
  CHECK(norm_l2(back.data()) == doctest::Approx(norm_l2(y)));
}

TEST_CASE("gather and scatter are adjoint") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 13;
    const Schedule s = random_2d(n, 1 + trial % (n * n - 1), static_cast<std::uint64_t>(trial));
    const ComplexGrid x = testsupport::random_grid(n, gen);
    std::normal_distribution<double> d;
    std::vector<cplx> y(s.acquired.size());
    for (cplx& v : y) v = {d(gen), d(gen)};
    const cplx lhs = inner(gather(x, s.acquired), y);
    const cplx rhs = inner(x.data(), scatter(s.acquired, y, n).data());
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("full schedule gathers the grid column-major") {
  std::mt19937_64 gen(2);
  const ComplexGrid g = testsupport::random_grid(5, gen);
  const NusData d = build_nusdata(g, random_2d(5, 25, 3));
  CHECK(d.y == std::vector<cplx>(g.data().begin(), g.data().end()));
}

TEST_CASE("scpg fill copies the acquired value and is symmetric") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(seed);
    // Deliberately asymmetric input: the copy must come from the acquired side.
    const ComplexGrid g = testsupport::random_grid(16, gen);
    const Schedule s = scpg_generate(16, 40, std::numbers::pi, seed);
    const NusData d = build_nusdata(g, s);
    CHECK_NOTHROW(validate(d));
    CHECK(d.r() == s.acquired.size() + s.copies.size());
    const ComplexGrid filled = scatter(d.omega, d.y, 16);
    CHECK(filled == sym_permute(filled));
    for (const CopyEntry& e : s.copies) CHECK(filled[e.dst] == g[e.src]);
  }
}

TEST_CASE("partition_spis splits a closed set") {
  const Schedule s = scpg_generate(32, 100, std::numbers::pi, 4);
  std::vector<Cell> omega = s.acquired;
  for (const CopyEntry& e : s.copies) omega.push_back(e.dst);
  std::sort(omega.begin(), omega.end(), canonical_less);
  const SpisPartition p = partition_spis(omega, 32);
  CHECK(p.upper.size() == p.lower.size());
  CHECK(p.upper.size() == s.copies.size());
  CHECK(p.diagonal.size() + 2 * p.upper.size() == omega.size());
  for (std::size_t i = 0; i < p.upper.size(); ++i) {
    CHECK(p.upper[i].row < p.upper[i].col);
    CHECK(p.lower[i] == p.upper[i].mirrored());
  }
  CHECK_THROWS_AS(partition_spis(std::vector<Cell>{{0, 1}}, 4), InvalidParameter);
}

TEST_CASE("nus file roundtrip is bitwise") {
  const auto dir = testsupport::scratch_dir("nusdata");
  std::mt19937_64 gen(5);
  const NusData d = build_nusdata(testsupport::random_grid(24, gen), scpg_generate(24, 50, std::numbers::pi, 2));
  write_nusdata(dir / "d.nusd", d);
  const NusData back = read_nusdata(dir / "d.nusd");
  CHECK(back.n == d.n);
  CHECK(back.omega == d.omega);
  CHECK(std::memcmp(back.y.data(), d.y.data(), d.y.size() * sizeof(cplx)) == 0);
  CHECK_THROWS_AS(read_nusdata(dir / "none.nusd"), IoError);
}

TEST_CASE("validate rejects unsorted or misaligned data") {
  NusData d{4, {{1, 0}, {0, 0}}, {1.0, 2.0}};
  CHECK_THROWS_AS(validate(d), InvalidParameter);
  d = NusData{4, {{0, 0}}, {1.0, 2.0}};
  CHECK_THROWS_AS(validate(d), InvalidParameter);
  d = NusData{4, {{0, 4}}, {1.0}};
  CHECK_THROWS_AS(validate(d), InvalidParameter);
}

TEST_CASE("build_nusdata checks sizes") {
  CHECK_THROWS_AS(build_nusdata(ComplexGrid(8), random_2d(4, 3, 1)), InvalidParameter);
}
