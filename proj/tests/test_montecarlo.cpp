#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nusrecon/error.hpp"
#include "nusrecon/montecarlo.hpp"

using namespace nusrecon;

namespace {

MonteCarloConfig small_config() {
  MonteCarloConfig c;
  c.trials = 1;
  c.n = 32;
  c.n_diag = 4;
  c.n_cross = 6;
  c.nus_rates = {0.1};
  c.noise_sigmas = {1e-3};
  c.istd.maxt = 40;
  return c;
}

bool same_rows(const std::vector<EvalRow>& a, const std::vector<EvalRow>& b) {
  if (a.size() != b.size()) return false;
  auto eq = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const EvalRow &x = a[i], &y = b[i];
    if (x.trial != y.trial || x.schedule != y.schedule || x.rate != y.rate || x.sigma != y.sigma || x.cls != y.cls ||
        x.iterations != y.iterations || !eq(x.metrics.rlne, y.metrics.rlne) || !eq(x.metrics.fit_a, y.metrics.fit_a) ||
        !eq(x.metrics.fit_b, y.metrics.fit_b) || !eq(x.metrics.pearson_r, y.metrics.pearson_r))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("one trial gives schedules x classes rows in order") {
  const auto rows = run_monte_carlo(small_config());
  REQUIRE(rows.size() == 6);
  const ScheduleKind order[] = {ScheduleKind::random, ScheduleKind::woven_pg, ScheduleKind::scpg};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(rows[i].schedule == order[i / 2]);
    CHECK(rows[i].cls == (i % 2 ? PeakClass::cross : PeakClass::diag));
    CHECK(rows[i].ok);
    CHECK(rows[i].metrics.rlne >= 0.0);
    CHECK(rows[i].iterations <= 41);
  }
}

TEST_CASE("row count is the product of the sweep axes") {
  MonteCarloConfig c = small_config();
  c.trials = 2;
  c.nus_rates = {0.1, 0.2};
  c.noise_sigmas = {0.0, 1e-3, 2e-3};
  c.schedules = {ScheduleKind::scpg};
  c.istd.maxt = 5;
  CHECK(run_monte_carlo(c).size() == 2 * 2 * 3 * 1 * 2);
}

TEST_CASE("results do not depend on the worker count") {
  MonteCarloConfig c = small_config();
  c.trials = 3;
  c.nus_rates = {0.1, 0.2};
  const auto serial = run_monte_carlo(c);
  c.workers = 3;
  const auto parallel = run_monte_carlo(c);
  CHECK(same_rows(serial, parallel));
  c.workers = 1;
  CHECK(same_rows(serial, run_monte_carlo(c)));
}

TEST_CASE("hook sees every reconstruction") {
  MonteCarloConfig c = small_config();
  c.trials = 2;
  c.workers = 2;
  int calls = 0;
  run_monte_carlo(c, [&](const ReconstructionView& v) {
    ++calls;
    CHECK(v.spectrum.n() == 32);
    CHECK(v.reference.n() == 32);
    CHECK(v.peaks.diag.size() == 4);
    if (v.schedule == ScheduleKind::scpg) CHECK(asymmetry_residual(v.spectrum) <= 1e-10 * max_abs(v.spectrum.data()));
  });
  CHECK(calls == 6);
}

TEST_CASE("l1 solver runs through the harness") {
  MonteCarloConfig c = small_config();
  c.solver = SolverKind::l1;
  c.l1.max_iters = 50;
  const auto rows = run_monte_carlo(c);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) CHECK(r.solver == SolverKind::l1);
}

TEST_CASE("csv output") {
  const auto rows = run_monte_carlo(small_config());
  std::ostringstream os;
  write_results_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == kResultsHeader);
  int count = 0;
  while (std::getline(is, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
  }
  CHECK(count == 6);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("config validation") {
  MonteCarloConfig c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(validate(c), InvalidParameter);
  c = small_config();
  c.nus_rates = {};
  CHECK_THROWS_AS(validate(c), InvalidParameter);
  c = small_config();
  c.noise_sigmas = {-1.0};
  CHECK_THROWS_AS(validate(c), InvalidParameter);
  c = small_config();
  c.workers = 0;
  CHECK_THROWS_AS(validate(c), InvalidParameter);
  const MonteCarloConfig p = MonteCarloConfig::paper_sweep();
  CHECK(p.trials == 100);
  CHECK(p.nus_rates.size() == 10);
  CHECK(p.noise_sigmas.size() == 10);
  CHECK(p.nus_rates.front() == 0.05);
  CHECK(p.noise_sigmas.front() == 0.0);
}
