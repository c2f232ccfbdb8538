#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace nusrecon {

/// Seedable 64-bit generator (MT19937-64, a twisted generalized feedback
/// shift register). The engine's output sequence is fixed by the C++
/// standard; every distribution below is implemented here rather than taken
/// from <random>, whose distribution algorithms vary between library vendors.
/// Together that makes every schedule, peak list and noise realization
/// bit-reproducible across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, bound); bound must be > 0. Unbiased (rejection).
  std::uint64_t uniform_int(std::uint64_t bound);

  bool coin() { return (next_u64() >> 63) != 0; }

  /// Standard normal draw (Marsaglia polar method, spare value cached).
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed, a purpose tag and a
/// list of integer coordinates (trial id, rate index, ...). Same inputs give
/// the same seed on every machine.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::initializer_list<std::uint64_t> coords = {});

}  // namespace nusrecon
