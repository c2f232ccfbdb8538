#pragma once

#include <cstdint>

#include "nusrecon/rng.hpp"

namespace nusrecon {

/// One draw from Pois(alpha). alpha == 0 returns 0 without consuming random
/// numbers. Knuth's product method for alpha <= 30, sequential-search
/// inversion above. Throws InvalidParameter for negative or non-finite alpha.
std::uint64_t poisson_sample(double alpha, Rng& rng);

}  // namespace nusrecon
