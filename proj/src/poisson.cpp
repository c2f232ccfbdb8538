#include "nusrecon/poisson.hpp"

#include <cmath>

#include "nusrecon/error.hpp"

namespace nusrecon {

std::uint64_t poisson_sample(double alpha, Rng& rng) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidParameter("poisson alpha must be finite and >= 0");
  if (alpha == 0.0) return 0;

  if (alpha <= 30.0) {
    const double limit = std::exp(-alpha);
    std::uint64_t k = 0;
    double p = rng.uniform();
    while (p > limit) {
      ++k;
      p *= rng.uniform();
    }
    return k;
  }

  // pmf evaluated in log space so exp(-alpha) underflow cannot stall the search.
  const double u = rng.uniform();
  const double log_alpha = std::log(alpha);
  double cdf = 0.0;
  std::uint64_t k = 0;
  for (;; ++k) {
    const double kd = static_cast<double>(k);
    cdf += std::exp(kd * log_alpha - alpha - std::lgamma(kd + 1.0));
    if (cdf > u) return k;
    // Past the bulk with cdf rounded just below u.
    if (kd > alpha + 40.0 * std::sqrt(alpha) + 40.0) return k;
  }
}

}  // namespace nusrecon
