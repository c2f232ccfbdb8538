#include "nusrecon/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "nusrecon/error.hpp"
#include "nusrecon/poisson.hpp"
#include "nusrecon/rng.hpp"

namespace nusrecon {
namespace {

constexpr int kMaxProbes = 64;

void check_theta(double theta) {
  const double pi = std::numbers::pi;
  if (std::abs(theta - pi) > 1e-12 && std::abs(theta - pi / 2) > 1e-12)
    throw InvalidParameter("theta must be pi or pi/2");
}

// Runs the gap process once along [0, len) with alpha(pos) = gamma * weight(pos).
template <class Weight>
std::vector<std::size_t> gap_process(std::size_t len, double gamma, const Weight& weight, Rng& rng) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < len) {
    const std::size_t idx = pos + poisson_sample(gamma * weight(pos), rng);
    if (idx >= len) break;
    out.push_back(idx);
    pos = idx + 1;
  }
  return out;
}

void trim_to(std::vector<std::size_t>& idx, std::size_t target) {
  while (idx.size() > target) {
    // Drop the sample sitting closest to its predecessor; keep the first one.
    std::size_t victim = 1;
    for (std::size_t k = 2; k < idx.size(); ++k)
      if (idx[k] - idx[k - 1] < idx[victim] - idx[victim - 1]) victim = k;
    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(victim));
  }
}

void pad_to(std::vector<std::size_t>& idx, std::size_t target, std::size_t len) {
  while (idx.size() < target) {
    // Split the widest hole, counting the virtual boundaries -1 and len.
    std::ptrdiff_t best_lo = -1;
    std::ptrdiff_t best_hi = idx.empty() ? static_cast<std::ptrdiff_t>(len) : static_cast<std::ptrdiff_t>(idx[0]);
    for (std::size_t k = 0; k <= idx.size(); ++k) {
      const std::ptrdiff_t lo = k == 0 ? -1 : static_cast<std::ptrdiff_t>(idx[k - 1]);
      const std::ptrdiff_t hi = k == idx.size() ? static_cast<std::ptrdiff_t>(len) : static_cast<std::ptrdiff_t>(idx[k]);
      if (hi - lo > best_hi - best_lo) {
        best_lo = lo;
        best_hi = hi;
      }
    }
    const std::ptrdiff_t mid = best_lo + (best_hi - best_lo) / 2;
    idx.insert(std::lower_bound(idx.begin(), idx.end(), static_cast<std::size_t>(mid)),
               static_cast<std::size_t>(mid));
  }
}

// Bisection on gamma until the gap process emits exactly `target` samples.
template <class Weight>
PgResult calibrated_gaps(std::size_t len, std::size_t target, std::uint64_t seed, std::string_view tag,
                         const Weight& weight) {
  PgResult res;
  if (target == len) {
    res.indices.resize(len);
    std::iota(res.indices.begin(), res.indices.end(), std::size_t{0});
    return res;
  }

  double lo = 0.0;
  double hi = 4.0 * static_cast<double>(len) / static_cast<double>(target);
  std::vector<std::size_t> best;
  double best_gamma = 0.0;
  std::size_t best_miss = static_cast<std::size_t>(-1);

  for (int probe = 0; probe < kMaxProbes; ++probe) {
    const double gamma = 0.5 * (lo + hi);
    Rng rng(derive_seed(seed, tag, {static_cast<std::uint64_t>(probe)}));
    auto idx = gap_process(len, gamma, weight, rng);
    res.probes = probe + 1;
    const std::size_t count = idx.size();
    const std::size_t miss = count > target ? count - target : target - count;
    if (miss < best_miss) {
      best_miss = miss;
      best = std::move(idx);
      best_gamma = gamma;
    }
    if (count == target) break;
    if (count > target)
      lo = gamma;
    else
      hi = gamma;
  }

  res.gamma = best_gamma;
  if (best.size() != target) {
    res.adjusted = true;
    trim_to(best, target);
    pad_to(best, target, len);
  }
  res.indices = std::move(best);
  return res;
}

void check_count(std::size_t target, std::size_t limit, const char* what) {
  if (target < 1 || target > limit)
    throw InvalidParameter(std::string(what) + " must be in [1, " + std::to_string(limit) + "], got " +
                           std::to_string(target));
}

void sort_canonical(std::vector<Cell>& cells) { std::sort(cells.begin(), cells.end(), canonical_less); }

}  // namespace

PgResult pg_1d(const PgConfig& cfg) {
  check_theta(cfg.theta);
  if (cfg.n_max < 1) throw InvalidParameter("n_max must be >= 1");
  check_count(cfg.target, cfg.n_max, "pg target");
  const double scale = cfg.theta / static_cast<double>(cfg.n_max);
  return calibrated_gaps(cfg.n_max, cfg.target, cfg.seed, "pg_1d",
                         [scale](std::size_t pos) { return std::sin(scale * static_cast<double>(pos)); });
}

std::string_view to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::random: return "random";
    case ScheduleKind::woven_pg: return "woven_pg";
    case ScheduleKind::scpg: return "scpg";
  }
  return "?";
}

ScheduleKind parse_schedule_kind(std::string_view s) {
  if (s == "random") return ScheduleKind::random;
  if (s == "woven_pg" || s == "wpg" || s == "woven") return ScheduleKind::woven_pg;
  if (s == "scpg") return ScheduleKind::scpg;
  throw InvalidParameter("unknown schedule kind: " + std::string(s));
}

void validate(const Schedule& s) {
  if (s.n < 2) throw InvalidParameter("schedule n must be >= 2");
  const std::size_t n = s.n;
  std::vector<char> acquired(n * n, 0);
  for (const Cell& c : s.acquired) {
    if (c.row >= n || c.col >= n) throw InvalidParameter("acquired cell out of range");
    if (acquired[c.linear(n)]) throw InvalidParameter("duplicate acquired cell");
    acquired[c.linear(n)] = 1;
  }
  if (s.kind != ScheduleKind::scpg) {
    if (!s.copies.empty()) throw InvalidParameter("only scpg schedules carry copies");
    return;
  }
  std::vector<char> filled = acquired;
  for (const CopyEntry& e : s.copies) {
    if (e.src.row >= n || e.src.col >= n || e.dst.row >= n || e.dst.col >= n)
      throw InvalidParameter("copy cell out of range");
    if (e.src.on_diagonal()) throw InvalidParameter("copy source on the diagonal");
    if (!(e.dst == e.src.mirrored())) throw InvalidParameter("copy destination is not the source mirror");
    if (!acquired[e.src.linear(n)]) throw InvalidParameter("copy source not acquired");
    if (acquired[e.dst.linear(n)]) throw InvalidParameter("both members of a pair acquired");
    if (filled[e.dst.linear(n)]) throw InvalidParameter("duplicate copy destination");
    filled[e.dst.linear(n)] = 1;
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (filled[r + c * n] != filled[c + r * n]) throw InvalidParameter("scpg fill set not transpose-closed");
}

Schedule random_2d(std::size_t n, std::size_t target, std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("grid side must be >= 2");
  check_count(target, n * n, "random target");
  Rng rng(derive_seed(seed, "random_2d"));
  std::vector<std::size_t> cells(n * n);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `target` slots become the sample.
  for (std::size_t k = 0; k < target; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.uniform_int(cells.size() - k));
    std::swap(cells[k], cells[pick]);
  }
  Schedule s;
  s.n = n;
  s.kind = ScheduleKind::random;
  s.seed = seed;
  s.theta = std::numbers::pi;
  for (std::size_t k = 0; k < target; ++k) s.acquired.push_back(Cell::from_linear(cells[k], n));
  sort_canonical(s.acquired);
  s.nominal_rate = static_cast<double>(target) / static_cast<double>(n * n);
  return s;
}

std::vector<Cell> antidiagonal_traversal(std::size_t n) {
  std::vector<Cell> order;
  order.reserve(n * n);
  for (std::size_t sum = 0; sum + 1 < 2 * n; ++sum) {
    const std::size_t r_lo = sum < n ? 0 : sum - n + 1;
    const std::size_t r_hi = std::min(sum, n - 1);
    if (sum % 2 == 0) {
      for (std::size_t r = r_lo; r <= r_hi; ++r)
        order.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(sum - r)});
    } else {
      for (std::size_t r = r_hi + 1; r-- > r_lo;)
        order.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(sum - r)});
    }
  }
  return order;
}

Schedule woven_pg_2d(std::size_t n, std::size_t target, double theta, std::uint64_t seed) {
  check_theta(theta);
  if (n < 2) throw InvalidParameter("grid side must be >= 2");
  check_count(target, n * n, "woven target");
  const auto order = antidiagonal_traversal(n);
  const double scale = theta / static_cast<double>(2 * n);
  PgResult pg = calibrated_gaps(n * n, target, seed, "woven_pg_2d", [&](std::size_t pos) {
    return std::sin(scale * static_cast<double>(order[pos].row + order[pos].col));
  });

  const std::size_t shift = pg.indices.front();
  Schedule s;
  s.n = n;
  s.kind = ScheduleKind::woven_pg;
  s.seed = seed;
  s.theta = theta;
  for (std::size_t pos : pg.indices) s.acquired.push_back(order[pos - shift]);
  sort_canonical(s.acquired);
  s.nominal_rate = static_cast<double>(target) / static_cast<double>(n * n);
  return s;
}

std::size_t pair_index(const Cell& c) {
  const std::size_t i = std::min(c.row, c.col) + 1;
  const std::size_t j = std::max(c.row, c.col) + 1;
  return j * (j - 1) / 2 + i;
}

Cell pair_cell(std::size_t k) {
  if (k < 1) throw InvalidParameter("pair index is 1-based");
  // Smallest j with j (j + 1) / 2 >= k.
  auto j = static_cast<std::size_t>(std::floor((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0));
  while (j * (j + 1) / 2 < k) ++j;
  while (j > 1 && (j - 1) * j / 2 >= k) --j;
  const std::size_t i = k - j * (j - 1) / 2;
  return {static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1)};
}

Schedule scpg_generate(std::size_t n, std::size_t target_pairs, double theta, std::uint64_t seed) {
  check_theta(theta);
  if (n < 2) throw InvalidParameter("grid side must be >= 2");
  const std::size_t n_pairs = n * (n + 1) / 2;
  check_count(target_pairs, n_pairs, "scpg target_pairs");

  // Position p on the pair line is pair k = p + 1.
  PgResult pg = pg_1d({n_pairs, theta, target_pairs, seed});

  Rng coin(derive_seed(seed, "scpg_coin"));
  Schedule s;
  s.n = n;
  s.kind = ScheduleKind::scpg;
  s.seed = seed;
  s.theta = theta;
  for (std::size_t p : pg.indices) {
    const Cell upper = pair_cell(p + 1);
    if (upper.on_diagonal()) {
      s.acquired.push_back(upper);
      continue;
    }
    const Cell take = coin.coin() ? upper : upper.mirrored();
    s.acquired.push_back(take);
    s.copies.push_back({take, take.mirrored()});
  }
  sort_canonical(s.acquired);
  std::sort(s.copies.begin(), s.copies.end(),
            [](const CopyEntry& a, const CopyEntry& b) { return canonical_less(a.src, b.src); });
  s.nominal_rate = static_cast<double>(target_pairs) / static_cast<double>(n * n);
  return s;
}

std::size_t count_for_rate(double rate, std::size_t n) {
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidParameter("rate must be in (0, 1]");
  const double exact = rate * static_cast<double>(n * n);
  return static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
}

}  // namespace nusrecon
