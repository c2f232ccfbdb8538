#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "nusrecon/grid.hpp"
#include "nusrecon/metrics.hpp"
#include "nusrecon/recon.hpp"
#include "nusrecon/schedule.hpp"
#include "nusrecon/synth.hpp"

namespace nusrecon {

enum class SolverKind { istd, l1 };

const char* to_string(SolverKind s);
SolverKind parse_solver_kind(const std::string& s);

struct MonteCarloConfig {
  int trials = 10;
  std::vector<double> nus_rates{0.05};
  std::vector<double> noise_sigmas{1e-3};
  std::vector<ScheduleKind> schedules{ScheduleKind::random, ScheduleKind::woven_pg, ScheduleKind::scpg};
  SolverKind solver = SolverKind::istd;
  std::uint64_t base_seed = 1;
  std::size_t n = 256;
  double theta = std::numbers::pi;
  std::size_t n_diag = 25;
  std::size_t n_cross = 50;
  double decay_alpha = 0.001;
  IstdConfig istd{};
  L1SolverConfig l1{};
  int workers = 1;

  /// Full experiment grid: 100 trials, 10 rates from 5% to 27.5%, 10 noise
  /// levels from 0 to 22.5e-4.
  static MonteCarloConfig paper_sweep();
};

void validate(const MonteCarloConfig& cfg);

struct EvalRow {
  int trial = 0;
  ScheduleKind schedule = ScheduleKind::random;
  SolverKind solver = SolverKind::istd;
  std::size_t n = 0;
  double rate = 0.0;
  double sigma = 0.0;
  PeakClass cls = PeakClass::diag;
  ClassMetrics metrics;
  int iterations = 0;
  double wall_time_s = 0.0;
  bool ok = true;  // false: the cell failed; metrics are NaN
  std::string error;
};

struct ReconstructionView {
  int trial;
  ScheduleKind schedule;
  double rate;
  double sigma;
  const PeakList& peaks;
  const ComplexGrid& reference;  // noiseless fully sampled spectrum
  const ComplexGrid& spectrum;   // reconstruction
};

/// Invoked once per reconstruction, serialized across workers.
using ReconstructionHook = std::function<void(const ReconstructionView&)>;

/// Rows in trial, schedule, rate, sigma, class order. Every trial derives its
/// peaks, noise and schedules from (base_seed, trial, ...), so the table is
/// the same for any worker count.
std::vector<EvalRow> run_monte_carlo(const MonteCarloConfig& cfg, const ReconstructionHook& hook = {});

inline constexpr const char* kResultsHeader =
    "trial,schedule,solver,n,rate,sigma,class,rlne,fit_a,fit_b,pearson_r,iterations,wall_time_s";

void write_results_csv(std::ostream& os, const std::vector<EvalRow>& rows);

/// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace nusrecon
