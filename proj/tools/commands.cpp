#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "nusrecon/error.hpp"
#include "nusrecon/fft.hpp"
#include "nusrecon/grid_io.hpp"
#include "nusrecon/metrics.hpp"
#include "nusrecon/montecarlo.hpp"
#include "nusrecon/nusdata.hpp"
#include "nusrecon/recon.hpp"
#include "nusrecon/schedule_io.hpp"
#include "nusrecon/synth.hpp"

namespace nusrecon::cli {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class CheckFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out = ".";
  bool quiet = false;
};

double parse_theta(const std::string& s) {
  if (s == "pi") return std::numbers::pi;
  if (s == "pi/2") return std::numbers::pi / 2;
  try {
    return std::stod(s);
  } catch (const std::logic_error&) {
    throw InvalidParameter("theta must be 'pi', 'pi/2' or a number");
  }
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory: " + out);
  return dir;
}

std::string absolute(const std::string& p) { return fs::absolute(fs::path(p)).lexically_normal().string(); }

// One manifest per output directory. `args` is the command line with input
// paths made absolute, so `rerun` reproduces the outputs.
void write_manifest(const fs::path& dir, const std::string& command, const std::vector<std::string>& args,
                    json parameters, json inputs, json outputs, json seeds) {
  json m;
  m["command"] = command;
  m["args"] = args;
  m["parameters"] = std::move(parameters);
  m["seeds"] = std::move(seeds);
  m["inputs"] = std::move(inputs);
  m["outputs"] = std::move(outputs);
  m["tool_version"] = kToolVersion;
  m["timestamp"] = timestamp();
  std::ofstream os(dir / "manifest.json");
  if (!os) throw IoError("cannot write manifest in " + dir.string());
  os << m.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::logic_error&) {
    throw InvalidParameter("config key " + key + ": not a number: " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::logic_error&) {
    throw InvalidParameter("config key " + key + ": not an integer: " + v);
  }
}

}  // namespace

MonteCarloConfig read_montecarlo_config(std::istream& is, MonteCarloConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(lineno) + " has no '='");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "trials") {
      base.trials = static_cast<int>(to_int(key, val));
    } else if (key == "nus_rates" || key == "rates") {
      base.nus_rates.clear();
      for (const auto& s : split_list(val)) base.nus_rates.push_back(to_double(key, s));
    } else if (key == "noise_sigmas" || key == "sigmas") {
      base.noise_sigmas.clear();
      for (const auto& s : split_list(val)) base.noise_sigmas.push_back(to_double(key, s));
    } else if (key == "schedules") {
      base.schedules.clear();
      for (const auto& s : split_list(val)) base.schedules.push_back(parse_schedule_kind(s));
    } else if (key == "solver") {
      base.solver = parse_solver_kind(val);
    } else if (key == "base_seed" || key == "seed") {
      base.base_seed = static_cast<std::uint64_t>(to_int(key, val));
    } else if (key == "n") {
      base.n = static_cast<std::size_t>(to_int(key, val));
    } else if (key == "theta") {
      base.theta = parse_theta(val);
    } else if (key == "n_diag") {
      base.n_diag = static_cast<std::size_t>(to_int(key, val));
    } else if (key == "n_cross") {
      base.n_cross = static_cast<std::size_t>(to_int(key, val));
    } else if (key == "decay_alpha" || key == "alpha") {
      base.decay_alpha = to_double(key, val);
    } else if (key == "maxt") {
      base.istd.maxt = static_cast<int>(to_int(key, val));
    } else if (key == "eps") {
      base.istd.eps = to_double(key, val);
    } else if (key == "shrink_factor") {
      base.istd.shrink_factor = to_double(key, val);
    } else if (key == "lambda") {
      base.l1.lambda = to_double(key, val);
    } else if (key == "max_iters") {
      base.l1.max_iters = static_cast<int>(to_int(key, val));
    } else if (key == "rel_obj_tol") {
      base.l1.rel_obj_tol = to_double(key, val);
    } else if (key == "workers") {
      base.workers = static_cast<int>(to_int(key, val));
    } else {
      throw FormatError("unknown config key: " + key);
    }
  }
  return base;
}

namespace {

json config_to_json(const MonteCarloConfig& c) {
  json j;
  j["trials"] = c.trials;
  j["nus_rates"] = c.nus_rates;
  j["noise_sigmas"] = c.noise_sigmas;
  std::vector<std::string> kinds;
  for (auto k : c.schedules) kinds.emplace_back(to_string(k));
  j["schedules"] = kinds;
  j["solver"] = to_string(c.solver);
  j["base_seed"] = c.base_seed;
  j["n"] = c.n;
  j["theta"] = c.theta;
  j["n_diag"] = c.n_diag;
  j["n_cross"] = c.n_cross;
  j["decay_alpha"] = c.decay_alpha;
  j["maxt"] = c.istd.maxt;
  if (c.istd.eps) j["eps"] = *c.istd.eps;
  j["shrink_factor"] = c.istd.shrink_factor;
  j["lambda"] = c.l1.lambda;
  j["max_iters"] = c.l1.max_iters;
  j["rel_obj_tol"] = c.l1.rel_obj_tol;
  j["workers"] = c.workers;
  return j;
}

// Canonical command line for the manifest: the caller's arguments with every
// input path made absolute and the output directory left to the caller.
std::vector<std::string> replay_args(const std::string& command, std::vector<std::pair<std::string, std::string>> opts,
                                     const std::vector<std::string>& flags) {
  std::vector<std::string> a{command};
  for (auto& [k, v] : opts) {
    a.push_back(k);
    a.push_back(v);
  }
  for (const auto& f : flags) a.push_back(f);
  return a;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-uniform sampling schedules and compressed-sensing reconstruction for symmetric 2D spectra",
               "nusrecon"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--quiet", g.quiet, "Suppress progress on stderr");

  std::function<void()> action;
  auto log = [&]() -> std::ostream& {
    static std::ostringstream sink;
    sink.str("");
    return g.quiet ? static_cast<std::ostream&>(sink) : err;
  };

  // schedule
  auto* sc = app.add_subcommand("schedule", "Generate a sampling schedule");
  std::string kind_s = "scpg", theta_s = "pi";
  std::size_t n = 256;
  std::optional<double> rate;
  std::optional<std::size_t> count;
  sc->add_option("--kind", kind_s, "random | woven_pg | scpg")->capture_default_str();
  sc->add_option("--n", n, "Grid side")->capture_default_str();
  auto* rate_opt = sc->add_option("--rate", rate, "NUS rate as a fraction of n^2 (converted by ceiling)");
  sc->add_option("--count", count, "Exact acquired count (pairs for scpg)")->excludes(rate_opt);
  sc->add_option("--theta", theta_s, "Sinusoid bound: pi | pi/2")->capture_default_str();
  sc->callback([&] {
    action = [&] {
      const ScheduleKind kind = parse_schedule_kind(kind_s);
      const double theta = parse_theta(theta_s);
      if (!rate && !count) throw InvalidParameter("schedule needs --rate or --count");
      const std::size_t target = count ? *count : count_for_rate(*rate, n);
      Schedule s = kind == ScheduleKind::random     ? random_2d(n, target, g.seed)
                   : kind == ScheduleKind::woven_pg ? woven_pg_2d(n, target, theta, g.seed)
                                                    : scpg_generate(n, target, theta, g.seed);
      const fs::path dir = prepare_out_dir(g.out);
      write_schedule(dir / "schedule.txt", s);
      out << "acquired=" << s.acquired.size() << " copies=" << s.copies.size() << '\n';
      json params{{"kind", to_string(kind)}, {"n", n}, {"theta", theta}, {"target", target}};
      if (rate) params["rate"] = *rate;
      write_manifest(dir, "schedule",
                     replay_args("schedule",
                                 {{"--kind", std::string(to_string(kind))},
                                  {"--n", std::to_string(n)},
                                  {"--count", std::to_string(target)},
                                  {"--theta", format_double(theta)},
                                  {"--seed", std::to_string(g.seed)}},
                                 {}),
                     params, json::object(), {{"schedule", "schedule.txt"}}, {{"seed", g.seed}});
    };
  });

  // synth
  auto* sy = app.add_subcommand("synth", "Synthesize a symmetric FID with diagonal and cross peaks");
  std::size_t syn_n = 256, n_diag = 25, n_cross = 50;
  double alpha = 0.001, sigma = 0.0;
  bool text = false;
  sy->add_option("--n", syn_n, "Grid side")->capture_default_str();
  sy->add_option("--diag", n_diag, "Diagonal peaks")->capture_default_str();
  sy->add_option("--cross", n_cross, "Cross peak pairs")->capture_default_str();
  sy->add_option("--alpha", alpha, "Decay per sample")->capture_default_str();
  sy->add_option("--sigma", sigma, "Noise std per component after normalization")->capture_default_str();
  sy->add_flag("--text", text, "Also write the text debug dump fid.txt");
  sy->callback([&] {
    action = [&] {
      PeakSpec spec;
      spec.n = syn_n;
      spec.n_diag = n_diag;
      spec.n_cross = n_cross;
      spec.decay_alpha = alpha;
      spec.seed = g.seed;
      const PeakList pl = make_peaklist(spec);
      ComplexGrid fid = normalize_max(synth_fid(pl));
      fid = add_noise(fid, {sigma, g.seed});
      const fs::path dir = prepare_out_dir(g.out);
      write_grid(dir / "fid.nusg", fid);
      write_peaklist(dir / "peaks.txt", pl);
      json outputs{{"fid", "fid.nusg"}, {"peaks", "peaks.txt"}};
      if (text) {
        write_grid_text(dir / "fid.txt", fid);
        outputs["fid_text"] = "fid.txt";
      }
      out << "n=" << syn_n << " diag=" << pl.diag.size() << " cross=" << pl.cross.size()
          << " max_abs=" << format_double(max_abs(fid.data())) << '\n';
      std::vector<std::string> flags;
      if (text) flags.emplace_back("--text");
      write_manifest(dir, "synth",
                     replay_args("synth",
                                 {{"--n", std::to_string(syn_n)},
                                  {"--diag", std::to_string(n_diag)},
                                  {"--cross", std::to_string(n_cross)},
                                  {"--alpha", format_double(alpha)},
                                  {"--sigma", format_double(sigma)},
                                  {"--seed", std::to_string(g.seed)}},
                                 flags),
                     {{"n", syn_n}, {"diag", n_diag}, {"cross", n_cross}, {"alpha", alpha}, {"sigma", sigma}},
                     json::object(), outputs, {{"seed", g.seed}});
    };
  });

  // sample
  auto* sa = app.add_subcommand("sample", "Apply a schedule to a fully sampled FID");
  std::string fid_path, sched_path;
  sa->add_option("--fid", fid_path, "NUSG grid file")->required();
  sa->add_option("--schedule", sched_path, "Schedule text file")->required();
  sa->callback([&] {
    action = [&] {
      const ComplexGrid fid = read_grid(fid_path);
      const Schedule s = read_schedule(fs::path(sched_path));
      const NusData d = build_nusdata(fid, s);
      const fs::path dir = prepare_out_dir(g.out);
      write_nusdata(dir / "nus.nusd", d);
      out << "r=" << d.r() << " acquired=" << s.acquired.size() << " copies=" << s.copies.size() << '\n';
      write_manifest(dir, "sample",
                     replay_args("sample", {{"--fid", absolute(fid_path)}, {"--schedule", absolute(sched_path)}}, {}),
                     json::object(), {{"fid", absolute(fid_path)}, {"schedule", absolute(sched_path)}},
                     {{"nus", "nus.nusd"}}, json::object());
    };
  });

  // reconstruct
  auto* re = app.add_subcommand("reconstruct", "Reconstruct a spectrum from NUS data");
  std::string nus_path, solver_s = "istd";
  IstdConfig istd;
  L1SolverConfig l1;
  std::optional<double> eps;
  bool trace = false;
  re->add_option("--nus", nus_path, "NUS data file")->required();
  re->add_option("--solver", solver_s, "istd | l1")->capture_default_str();
  re->add_option("--maxt", istd.maxt, "IST-D iteration cap")->capture_default_str();
  re->add_option("--eps", eps, "IST-D residual tolerance (default 1e-6 ||y||)");
  re->add_option("--shrink", istd.shrink_factor, "IST-D threshold multiplier")->capture_default_str();
  re->add_option("--lambda", l1.lambda, "l1 weight")->capture_default_str();
  re->add_option("--max-iters", l1.max_iters, "l1 iteration cap")->capture_default_str();
  re->add_option("--tol", l1.rel_obj_tol, "l1 relative objective change to stop")->capture_default_str();
  re->add_flag("--trace", trace, "Write trace.csv");
  re->callback([&] {
    action = [&] {
      const SolverKind solver = parse_solver_kind(solver_s);
      const NusData d = read_nusdata(nus_path);
      istd.eps = eps;
      istd.keep_trace = l1.keep_trace = trace;
      log() << "reconstructing n=" << d.n << " r=" << d.r() << " with " << to_string(solver) << '\n';
      const ReconResult res = solver == SolverKind::istd ? istd_reconstruct(d, istd) : l1_reconstruct(d, l1);
      const fs::path dir = prepare_out_dir(g.out);
      write_grid(dir / "spectrum.nusg", res.spectrum);
      json outputs{{"spectrum", "spectrum.nusg"}};
      if (trace) {
        std::ofstream ts(dir / "trace.csv");
        if (!ts) throw IoError("cannot write trace.csv");
        ts << "iter," << (solver == SolverKind::istd ? "beta" : "objective") << ",residual\n";
        for (const TraceRow& t : res.trace)
          ts << t.iter << ',' << format_double(t.beta_or_objective) << ',' << format_double(t.residual) << '\n';
        outputs["trace"] = "trace.csv";
      }
      out << "iterations=" << res.iterations << " residual=" << format_double(res.final_residual)
          << " wall_time_s=" << format_double(res.wall_time) << '\n';
      std::vector<std::pair<std::string, std::string>> opts{{"--nus", absolute(nus_path)},
                                                            {"--solver", to_string(solver)}};
      json params{{"solver", to_string(solver)}};
      if (solver == SolverKind::istd) {
        opts.push_back({"--maxt", std::to_string(istd.maxt)});
        opts.push_back({"--shrink", format_double(istd.shrink_factor)});
        if (eps) opts.push_back({"--eps", format_double(*eps)});
        params["maxt"] = istd.maxt;
        params["shrink_factor"] = istd.shrink_factor;
        params["eps"] = eps ? *eps : 1e-6 * norm_l2(d.y);
      } else {
        opts.push_back({"--lambda", format_double(l1.lambda)});
        opts.push_back({"--max-iters", std::to_string(l1.max_iters)});
        opts.push_back({"--tol", format_double(l1.rel_obj_tol)});
        params["lambda"] = l1.lambda;
        params["max_iters"] = l1.max_iters;
        params["rel_obj_tol"] = l1.rel_obj_tol;
      }
      write_manifest(dir, "reconstruct", replay_args("reconstruct", opts, trace ? std::vector<std::string>{"--trace"}
                                                                                : std::vector<std::string>{}),
                     params, {{"nus", absolute(nus_path)}}, outputs, json::object());
    };
  });

  // eval
  auto* ev = app.add_subcommand("eval", "Score a spectrum against a reference or peak list");
  std::string spec_path, ref_path, peaks_path;
  std::size_t window = 1;
  bool check_sym = false;
  double sym_tol = 1e-10;
  ev->add_option("--spectrum", spec_path, "Spectrum NUSG file")->required();
  ev->add_option("--reference", ref_path, "Reference spectrum NUSG file");
  ev->add_option("--peaks", peaks_path, "Peak list manifest");
  ev->add_option("--window", window, "Integration window (odd) for detected peaks")->capture_default_str();
  ev->add_flag("--check-symmetry", check_sym, "Fail unless asymmetry <= tol * max|spectrum|");
  ev->add_option("--symmetry-tol", sym_tol, "Relative symmetry tolerance")->capture_default_str();
  ev->callback([&] {
    action = [&] {
      if (ref_path.empty() && peaks_path.empty() && !check_sym)
        throw InvalidParameter("eval needs --reference, --peaks or --check-symmetry");
      const ComplexGrid spectrum = read_grid(spec_path);
      const fs::path dir = prepare_out_dir(g.out);
      std::ofstream ms(dir / "metrics.csv");
      if (!ms) throw IoError("cannot write metrics.csv");
      ms << "class,count,rlne,fit_a,fit_b,pearson_r\n";
      auto emit = [&](const std::string& cls, std::span<const double> rec, std::span<const double> ref) {
        const ClassMetrics m = compare_amplitudes(rec, ref);
        const std::string row = cls + ',' + std::to_string(ref.size()) + ',' + format_double(m.rlne) + ',' +
                                format_double(m.fit_a) + ',' + format_double(m.fit_b) + ',' +
                                format_double(m.pearson_r);
        ms << row << '\n';
        out << row << '\n';
      };

      json inputs{{"spectrum", absolute(spec_path)}};
      std::vector<std::pair<std::string, std::string>> opts{{"--spectrum", absolute(spec_path)},
                                                            {"--window", std::to_string(window)},
                                                            {"--symmetry-tol", format_double(sym_tol)}};
      if (!peaks_path.empty()) {
        const PeakList pl = read_peaklist(fs::path(peaks_path));
        const ComplexGrid reference =
            ref_path.empty() ? ft2d(normalize_max(synth_fid(pl))) : read_grid(ref_path);
        for (PeakClass cls : {PeakClass::diag, PeakClass::cross}) {
          if (peak_cells(pl, cls).empty()) continue;
          emit(to_string(cls), peak_amplitudes(spectrum, pl, cls), peak_amplitudes(reference, pl, cls));
        }
        inputs["peaks"] = absolute(peaks_path);
        opts.push_back({"--peaks", absolute(peaks_path)});
      } else if (!ref_path.empty()) {
        const ComplexGrid reference = read_grid(ref_path);
        if (reference.n() != spectrum.n()) throw InvalidParameter("spectrum and reference sizes differ");
        const auto peaks = integrate_peaks(reference, window);
        if (peaks.empty()) throw DegenerateInput("no peaks detected in the reference");
        std::vector<double> rec, ref;
        for (const PeakIntegral& p : peaks) {
          ref.push_back(p.integral);
          double sum = 0.0;
          const auto half = static_cast<long>(window / 2);
          const auto nn = static_cast<long>(spectrum.n());
          for (long a = -half; a <= half; ++a)
            for (long b = -half; b <= half; ++b)
              sum += std::abs(spectrum(static_cast<std::size_t>(((p.cell.row + b) % nn + nn) % nn),
                                       static_cast<std::size_t>(((p.cell.col + a) % nn + nn) % nn)));
          rec.push_back(sum);
        }
        emit("detected", rec, ref);
      }
      if (!ref_path.empty()) {
        inputs["reference"] = absolute(ref_path);
        opts.push_back({"--reference", absolute(ref_path)});
      }
      std::vector<std::string> flags;
      bool sym_ok = true;
      if (check_sym) {
        flags.emplace_back("--check-symmetry");
        const double asym = asymmetry_residual(spectrum);
        const double scale = max_abs(spectrum.data());
        sym_ok = asym <= sym_tol * scale;
        out << "asymmetry_residual=" << format_double(asym) << " max_abs=" << format_double(scale)
            << " symmetric=" << (sym_ok ? "yes" : "no") << '\n';
      }
      write_manifest(dir, "eval", replay_args("eval", opts, flags), {{"window", window}, {"symmetry_tol", sym_tol}},
                     inputs, {{"metrics", "metrics.csv"}}, json::object());
      if (!sym_ok) throw CheckFailed("spectrum is not symmetric within tolerance");
    };
  });

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo", "Run the schedule comparison sweep");
  std::string config_path;
  bool paper_sweep = false;
  std::optional<int> workers;
  mc->add_option("--config", config_path, "key = value config file");
  mc->add_flag("--paper-sweep", paper_sweep, "Start from the full 100 x 10 x 10 x 3 experiment grid");
  mc->add_option("--workers", workers, "Concurrent trials");
  mc->callback([&] {
    action = [&] {
      MonteCarloConfig cfg = paper_sweep ? MonteCarloConfig::paper_sweep() : MonteCarloConfig{};
      if (!config_path.empty()) {
        std::ifstream cs(config_path);
        if (!cs) throw IoError("cannot open config: " + config_path);
        cfg = read_montecarlo_config(cs, cfg);
      }
      if (g.seed_given) cfg.base_seed = g.seed;
      if (workers) cfg.workers = *workers;
      validate(cfg);
      log() << "montecarlo: " << cfg.trials << " trials x " << cfg.nus_rates.size() << " rates x "
            << cfg.noise_sigmas.size() << " sigmas x " << cfg.schedules.size() << " schedules\n";
      const auto rows = run_monte_carlo(cfg);
      const fs::path dir = prepare_out_dir(g.out);
      std::ofstream rs(dir / "results.csv");
      if (!rs) throw IoError("cannot write results.csv");
      write_results_csv(rs, rows);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += !r.ok;
      out << "rows=" << rows.size() << " failed=" << failed << '\n';

      std::vector<std::pair<std::string, std::string>> opts;
      json inputs = json::object();
      if (!config_path.empty()) {
        opts.push_back({"--config", absolute(config_path)});
        inputs["config"] = absolute(config_path);
      }
      opts.push_back({"--seed", std::to_string(cfg.base_seed)});
      opts.push_back({"--workers", std::to_string(cfg.workers)});
      write_manifest(dir, "montecarlo",
                     replay_args("montecarlo", opts,
                                 paper_sweep ? std::vector<std::string>{"--paper-sweep"} : std::vector<std::string>{}),
                     config_to_json(cfg), inputs, {{"results", "results.csv"}}, {{"base_seed", cfg.base_seed}});
    };
  });

  // rerun
  auto* rr = app.add_subcommand("rerun", "Re-execute the command recorded in a manifest");
  std::string manifest_path;
  rr->add_option("--manifest", manifest_path, "manifest.json")->required();
  std::vector<std::string> replay;
  rr->callback([&] {
    action = [&] {
      std::ifstream ms(manifest_path);
      if (!ms) throw IoError("cannot open manifest: " + manifest_path);
      json m;
      try {
        ms >> m;
        replay = m.at("args").get<std::vector<std::string>>();
      } catch (const json::exception& e) {
        throw FormatError(std::string("bad manifest: ") + e.what());
      }
      replay.push_back("--out");
      replay.push_back(g.out);
      if (g.quiet) replay.push_back("--quiet");
    };
  });

  try {
    std::vector<std::string> reversed(raw_args.rbegin(), raw_args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  }

  try {
    action();
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kFormatViolation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoFailure;
  }

  if (!replay.empty()) return run(replay, out, err);
  return kOk;
}

}  // namespace nusrecon::cli
