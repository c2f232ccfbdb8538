#include "nusrecon/recon.hpp"

#include <chrono>
#include <cmath>

#include "nusrecon/error.hpp"
#include "nusrecon/fft.hpp"

namespace nusrecon {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// P F2D^-1 X
std::vector<cplx> forward(const NusData& nus, const ComplexGrid& x) { return gather(ift2d(x), nus.omega); }

// F2D P^H v
ComplexGrid adjoint(const NusData& nus, std::span<const cplx> v) { return ft2d(scatter(nus.omega, v, nus.n)); }

std::vector<cplx> minus(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

double sq_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

double l1_norm(const ComplexGrid& g) {
  double s = 0.0;
  for (const cplx& z : g.data()) s += std::abs(z);
  return s;
}

}  // namespace

ComplexGrid shr(const ComplexGrid& g, double beta) {
  if (!(beta >= 0.0)) throw InvalidParameter("threshold must be >= 0");
  ComplexGrid out(g.n());
  auto src = g.data();
  auto dst = out.data();
  for (std::size_t k = 0; k < src.size(); ++k) {
    const double m = std::abs(src[k]);
    if (m > beta) dst[k] = src[k] * ((m - beta) / m);
  }
  return out;
}

ReconResult istd_reconstruct(const NusData& nus, const IstdConfig& cfg, const IstdObserver& observer) {
  validate(nus);
  if (cfg.maxt < 1) throw InvalidParameter("maxt must be >= 1");
  if (!(cfg.shrink_factor > 0.0 && cfg.shrink_factor < 1.0)) throw InvalidParameter("shrink_factor must be in (0, 1)");
  if (cfg.eps && !(*cfg.eps >= 0.0)) throw InvalidParameter("eps must be >= 0");

  const auto t0 = Clock::now();
  const double y_norm = norm_l2(nus.y);
  ReconResult res{ComplexGrid(nus.n), 0, 0.0, 0.0, {}};
  if (y_norm == 0.0) return res;

  const double eps = cfg.eps.value_or(1e-6 * y_norm);
  ComplexGrid& x = res.spectrum;
  std::vector<cplx> r = nus.y;
  ComplexGrid s = adjoint(nus, r);
  double r_norm = y_norm;
  if (observer) observer(0, x, s);

  int t = 0;
  while (t <= cfg.maxt && r_norm > eps) {
    const double beta = cfg.shrink_factor * max_abs(s.data()) * static_cast<double>(cfg.maxt - t) /
                        static_cast<double>(cfg.maxt);
    x += shr(s, beta);
    r = minus(nus.y, forward(nus, x));
    s = adjoint(nus, r);
    r_norm = norm_l2(r);
    ++t;
    if (cfg.keep_trace) res.trace.push_back({t, beta, r_norm});
    if (observer) observer(t, x, s);
  }

  res.iterations = t;
  res.final_residual = r_norm;
  res.wall_time = seconds_since(t0);
  return res;
}

double l1_objective(const NusData& nus, const ComplexGrid& x, double lambda) {
  return 0.5 * sq_norm(minus(forward(nus, x), nus.y)) + lambda * l1_norm(x);
}

ReconResult l1_reconstruct(const NusData& nus, const L1SolverConfig& cfg) {
  validate(nus);
  if (!(cfg.lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  if (cfg.max_iters < 1) throw InvalidParameter("max_iters must be >= 1");
  if (!(cfg.rel_obj_tol > 0.0)) throw InvalidParameter("rel_obj_tol must be > 0");

  const auto t0 = Clock::now();
  ReconResult res{ComplexGrid(nus.n), 0, 0.0, 0.0, {}};
  if (norm_l2(nus.y) == 0.0) return res;

  // x: accepted iterate; z: extrapolated point. Their forward images are
  // carried along so each pass costs one adjoint and one forward transform.
  ComplexGrid x(nus.n);
  std::vector<cplx> ax(nus.r());
  ComplexGrid z = x;
  std::vector<cplx> az = ax;
  double obj = 0.5 * sq_norm(nus.y);
  double momentum_t = 1.0;

  int k = 0;
  while (k < cfg.max_iters) {
    ++k;
    ComplexGrid step = z - adjoint(nus, minus(az, nus.y));
    ComplexGrid xn = shr(step, cfg.lambda);
    std::vector<cplx> axn = forward(nus, xn);
    const double obj_n = 0.5 * sq_norm(minus(axn, nus.y)) + cfg.lambda * l1_norm(xn);

    if (obj_n > obj && momentum_t > 1.0) {
      // Momentum overshoot: restart from the accepted point.
      momentum_t = 1.0;
      z = x;
      az = ax;
      if (cfg.keep_trace) res.trace.push_back({k, obj, std::sqrt(sq_norm(minus(ax, nus.y)))});
      continue;
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum_t * momentum_t));
    const double w = (momentum_t - 1.0) / t_next;
    momentum_t = t_next;
    z = xn;
    z += w * (xn - x);
    az.resize(axn.size());
    for (std::size_t i = 0; i < axn.size(); ++i) az[i] = axn[i] + w * (axn[i] - ax[i]);

    const double change = std::abs(obj - obj_n);
    x = std::move(xn);
    ax = std::move(axn);
    obj = obj_n;
    if (cfg.keep_trace) res.trace.push_back({k, obj, std::sqrt(sq_norm(minus(ax, nus.y)))});
    if (change <= cfg.rel_obj_tol * obj) break;
  }

  res.spectrum = std::move(x);
  res.iterations = k;
  res.final_residual = std::sqrt(sq_norm(minus(ax, nus.y)));
  res.wall_time = seconds_since(t0);
  return res;
}

}  // namespace nusrecon
