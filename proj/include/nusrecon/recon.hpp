#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nusrecon/grid.hpp"
#include "nusrecon/nusdata.hpp"

namespace nusrecon {

/// Complex soft threshold: 0 where |z| <= beta, else z (|z| - beta) / |z|.
ComplexGrid shr(const ComplexGrid& g, double beta);

struct IstdConfig {
  int maxt = 200;
  /// Stop once ||r||_2 <= eps. Unset means 1e-6 * ||y||_2.
  std::optional<double> eps;
  double shrink_factor = 0.99;
  bool keep_trace = false;
};

struct L1SolverConfig {
  double lambda = 0.001;
  int max_iters = 500;
  double rel_obj_tol = 1e-8;
  bool keep_trace = false;
};

struct TraceRow {
  int iter = 0;
  double beta_or_objective = 0.0;
  double residual = 0.0;
};

struct ReconResult {
  ComplexGrid spectrum;
  int iterations = 0;
  double final_residual = 0.0;
  double wall_time = 0.0;
  std::vector<TraceRow> trace;
};

/// Called with (t, X^t, S^t) for t = 0 and after every pass.
using IstdObserver = std::function<void(int, const ComplexGrid&, const ComplexGrid&)>;

/// 2D IST-D:
///   S0 = F2D P^H y, X0 = 0, r0 = y
///   while t <= maxt and ||r|| > eps:
///     beta = shrink * max|S| * (maxt - t) / maxt
///     X += SHR_beta(S);  r = y - P F2D^-1 X;  S = F2D P^H r;  ++t
/// The pass at t = maxt runs with beta = 0, so up to maxt + 1 passes run.
ReconResult istd_reconstruct(const NusData& nus, const IstdConfig& cfg, const IstdObserver& observer = {});

/// Minimizes 0.5 ||P F2D^-1 X - y||^2 + lambda ||X||_1 by accelerated proximal
/// gradient (step 1, momentum reset whenever the objective goes up). Trace rows
/// carry the objective.
ReconResult l1_reconstruct(const NusData& nus, const L1SolverConfig& cfg);

/// 0.5 ||P F2D^-1 X - y||^2 + lambda ||X||_1.
double l1_objective(const NusData& nus, const ComplexGrid& x, double lambda);

}  // namespace nusrecon
