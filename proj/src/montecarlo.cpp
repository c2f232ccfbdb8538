#include "nusrecon/montecarlo.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "nusrecon/error.hpp"
#include "nusrecon/fft.hpp"
#include "nusrecon/nusdata.hpp"
#include "nusrecon/rng.hpp"

namespace nusrecon {

const char* to_string(SolverKind s) { return s == SolverKind::istd ? "istd" : "l1"; }

SolverKind parse_solver_kind(const std::string& s) {
  if (s == "istd" || s == "ist-d") return SolverKind::istd;
  if (s == "l1") return SolverKind::l1;
  throw InvalidParameter("unknown solver: " + s);
}

MonteCarloConfig MonteCarloConfig::paper_sweep() {
  MonteCarloConfig cfg;
  cfg.trials = 100;
  cfg.nus_rates.clear();
  cfg.noise_sigmas.clear();
  for (int k = 0; k < 10; ++k) {
    cfg.nus_rates.push_back(0.05 + 0.025 * k);
    cfg.noise_sigmas.push_back(2.5e-4 * k);
  }
  return cfg;
}

void validate(const MonteCarloConfig& cfg) {
  if (cfg.trials < 1) throw InvalidParameter("trials must be >= 1");
  if (cfg.n < 2) throw InvalidParameter("n must be >= 2");
  if (cfg.nus_rates.empty() || cfg.noise_sigmas.empty() || cfg.schedules.empty())
    throw InvalidParameter("rates, sigmas and schedules must be non-empty");
  for (double r : cfg.nus_rates)
    if (!(r > 0.0 && r <= 1.0)) throw InvalidParameter("rates must lie in (0, 1]");
  for (double s : cfg.noise_sigmas)
    if (!(s >= 0.0)) throw InvalidParameter("noise sigmas must be >= 0");
  if (cfg.workers < 1) throw InvalidParameter("workers must be >= 1");
}

namespace {

Schedule make_schedule(ScheduleKind kind, std::size_t n, double rate, double theta, std::uint64_t seed) {
  const std::size_t count = count_for_rate(rate, n);
  switch (kind) {
    case ScheduleKind::random: return random_2d(n, count, seed);
    case ScheduleKind::woven_pg: return woven_pg_2d(n, count, theta, seed);
    case ScheduleKind::scpg: return scpg_generate(n, count, theta, seed);
  }
  throw InvalidParameter("unknown schedule kind");
}

// Rows of one trial, in output order.
std::vector<EvalRow> run_trial(const MonteCarloConfig& cfg, int trial, const ReconstructionHook& hook,
                               std::mutex& hook_mu) {
  const auto tid = static_cast<std::uint64_t>(trial);
  PeakSpec spec;
  spec.n = cfg.n;
  spec.n_diag = cfg.n_diag;
  spec.n_cross = cfg.n_cross;
  spec.decay_alpha = cfg.decay_alpha;
  spec.seed = derive_seed(cfg.base_seed, "trial_peaks", {tid});
  const PeakList peaks = make_peaklist(spec);
  const ComplexGrid fid = normalize_max(synth_fid(peaks));
  const ComplexGrid reference = ft2d(fid);
  const std::vector<double> ref_diag = peak_amplitudes(reference, peaks, PeakClass::diag);
  const std::vector<double> ref_cross = peak_amplitudes(reference, peaks, PeakClass::cross);

  std::vector<ComplexGrid> noisy;
  for (std::size_t si = 0; si < cfg.noise_sigmas.size(); ++si)
    noisy.push_back(add_noise(fid, {cfg.noise_sigmas[si], derive_seed(cfg.base_seed, "trial_noise", {tid, si})}));

  std::vector<EvalRow> rows;
  for (ScheduleKind kind : cfg.schedules) {
    for (std::size_t ri = 0; ri < cfg.nus_rates.size(); ++ri) {
      const double rate = cfg.nus_rates[ri];
      const auto kind_id = static_cast<std::uint64_t>(kind);
      Schedule sched;
      std::string sched_error;
      try {
        sched = make_schedule(kind, cfg.n, rate, cfg.theta,
                              derive_seed(cfg.base_seed, "trial_schedule", {tid, kind_id, ri}));
      } catch (const std::exception& e) {
        sched_error = e.what();
      }

      for (std::size_t si = 0; si < cfg.noise_sigmas.size(); ++si) {
        EvalRow base;
        base.trial = trial;
        base.schedule = kind;
        base.solver = cfg.solver;
        base.n = cfg.n;
        base.rate = rate;
        base.sigma = cfg.noise_sigmas[si];

        EvalRow diag = base, cross = base;
        diag.cls = PeakClass::diag;
        cross.cls = PeakClass::cross;
        try {
          if (!sched_error.empty()) throw std::runtime_error(sched_error);
          const NusData nus = build_nusdata(noisy[si], sched);
          const ReconResult rec = cfg.solver == SolverKind::istd ? istd_reconstruct(nus, cfg.istd)
                                                                 : l1_reconstruct(nus, cfg.l1);
          diag.metrics = compare_amplitudes(peak_amplitudes(rec.spectrum, peaks, PeakClass::diag), ref_diag);
          cross.metrics = compare_amplitudes(peak_amplitudes(rec.spectrum, peaks, PeakClass::cross), ref_cross);
          diag.iterations = cross.iterations = rec.iterations;
          diag.wall_time_s = cross.wall_time_s = rec.wall_time;
          if (hook) {
            std::lock_guard lock(hook_mu);
            hook({trial, kind, rate, base.sigma, peaks, reference, rec.spectrum});
          }
        } catch (const std::exception& e) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          for (EvalRow* row : {&diag, &cross}) {
            row->ok = false;
            row->error = e.what();
            row->metrics = {nan, nan, nan, nan};
          }
        }
        rows.push_back(std::move(diag));
        rows.push_back(std::move(cross));
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<EvalRow> run_monte_carlo(const MonteCarloConfig& cfg, const ReconstructionHook& hook) {
  validate(cfg);
  std::vector<std::vector<EvalRow>> per_trial(static_cast<std::size_t>(cfg.trials));
  std::mutex hook_mu;
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      try {
        per_trial[static_cast<std::size_t>(t)] = run_trial(cfg, t, hook, hook_mu);
      } catch (const std::exception& e) {
        // Trial setup failed; flag every cell of the trial.
        EvalRow row;
        row.trial = t;
        row.solver = cfg.solver;
        row.n = cfg.n;
        row.ok = false;
        row.error = e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.metrics = {nan, nan, nan, nan};
        auto& out = per_trial[static_cast<std::size_t>(t)];
        for (ScheduleKind kind : cfg.schedules)
          for (double rate : cfg.nus_rates)
            for (double sigma : cfg.noise_sigmas)
              for (PeakClass cls : {PeakClass::diag, PeakClass::cross}) {
                row.schedule = kind;
                row.rate = rate;
                row.sigma = sigma;
                row.cls = cls;
                out.push_back(row);
              }
      }
    }
  };

  const int n_workers = std::min(cfg.workers, cfg.trials);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  std::vector<EvalRow> rows;
  for (auto& t : per_trial)
    for (auto& r : t) rows.push_back(std::move(r));
  return rows;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_results_csv(std::ostream& os, const std::vector<EvalRow>& rows) {
  os << kResultsHeader << '\n';
  for (const EvalRow& r : rows) {
    os << r.trial << ',' << to_string(r.schedule) << ',' << to_string(r.solver) << ',' << r.n << ','
       << format_double(r.rate) << ',' << format_double(r.sigma) << ',' << to_string(r.cls) << ','
       << format_double(r.metrics.rlne) << ',' << format_double(r.metrics.fit_a) << ','
       << format_double(r.metrics.fit_b) << ',' << format_double(r.metrics.pearson_r) << ',' << r.iterations
       << ',' << format_double(r.wall_time_s) << '\n';
  }
}

}  // namespace nusrecon
