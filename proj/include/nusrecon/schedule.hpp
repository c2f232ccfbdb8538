#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "nusrecon/grid.hpp"

namespace nusrecon {

struct PgConfig {
  std::size_t n_max = 0;             // length of the index line
  double theta = std::numbers::pi;   // sinusoid upper bound, pi or pi/2
  std::size_t target = 0;            // exact number of indices to return
  std::uint64_t seed = 0;
};

struct PgResult {
  std::vector<std::size_t> indices;  // sorted, distinct, in [0, n_max)
  double gamma = 0.0;                // gap scale of the accepted probe
  int probes = 0;                    // generator runs spent calibrating gamma
  bool adjusted = false;             // true if the probe budget ran out and trim/pad was applied
};

/// 1D Poisson-gap sampling. Gaps between consecutive indices are Pois(alpha)
/// with alpha = gamma * sin(theta * pos / n_max), pos being the index just
/// after the previous sample (pos = 0 for the first gap). gamma is found by
/// bisection so that exactly cfg.target indices come out; each probe reseeds
/// from (cfg.seed, probe number). After 64 probes the closest probe is trimmed
/// (drop the sample closest to its predecessor) or padded (split the largest
/// gap) to the target.
PgResult pg_1d(const PgConfig& cfg);

enum class ScheduleKind { random, woven_pg, scpg };

std::string_view to_string(ScheduleKind k);
ScheduleKind parse_schedule_kind(std::string_view s);

/// One symmetric fill: the value acquired at src is copied to dst = src^T.
struct CopyEntry {
  Cell src;
  Cell dst;
  friend bool operator==(const CopyEntry&, const CopyEntry&) = default;
};

struct Schedule {
  std::size_t n = 0;
  ScheduleKind kind = ScheduleKind::random;
  std::vector<Cell> acquired;     // canonical order
  std::vector<CopyEntry> copies;  // scpg only; ordered by src in canonical order
  std::uint64_t seed = 0;
  double theta = std::numbers::pi;
  double nominal_rate = 0.0;      // acquired.size() / n^2; copies are free

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Throws InvalidParameter if a structural invariant is broken (out-of-range
/// or duplicate cells, malformed copies, missing transpose closure).
void validate(const Schedule& s);

/// Uniform sample of `target` cells without replacement.
Schedule random_2d(std::size_t n, std::size_t target, std::uint64_t seed);

/// 2D woven Poisson gap: the gap process runs along a serpentine traversal of
/// the anti-diagonals (row + col constant), modulated by
/// sin(theta * (row + col) / (2 n)). The sampled set is then shifted back
/// along the traversal until position 0 is sampled.
Schedule woven_pg_2d(std::size_t n, std::size_t target, double theta, std::uint64_t seed);

/// Serpentine anti-diagonal traversal used by woven_pg_2d.
std::vector<Cell> antidiagonal_traversal(std::size_t n);

/// Symmetrical copy Poisson gap. Selects `target_pairs` symmetrical pairs by
/// running pg_1d over the pair index line k = 1 .. n(n+1)/2; for a two-point
/// pair one member is acquired (fair coin) and the other is filled by copy.
Schedule scpg_generate(std::size_t n, std::size_t target_pairs, double theta, std::uint64_t seed);

/// Pair index of the symmetrical pair containing `c`: with 1-based
/// i = min(row, col) + 1 and j = max(row, col) + 1, k = j (j - 1) / 2 + i.
std::size_t pair_index(const Cell& c);

/// Upper-triangle member (row <= col) of pair k (1-based).
Cell pair_cell(std::size_t k);

/// Number of cells a rate corresponds to: ceil(rate * n^2), guarded against
/// rounding just above an integer.
std::size_t count_for_rate(double rate, std::size_t n);

}  // namespace nusrecon
