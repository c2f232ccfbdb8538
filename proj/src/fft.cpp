#include "nusrecon/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace nusrecon {
namespace {

struct PassPlans {
  fftw_plan columns;
  fftw_plan rows;
};

// FFTW's planner is not thread-safe; fftw_execute_dft is.
class PlanCache {
public:
  const PassPlans& get(std::size_t n, int sign) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<cplx> scratch(n * n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PassPlans p;
    p.columns = fftw_plan_many_dft(1, &len, len, buf, nullptr, 1, len, buf, nullptr, 1, len, sign, flags);
    p.rows = fftw_plan_many_dft(1, &len, len, buf, nullptr, len, 1, buf, nullptr, len, 1, sign, flags);
    return plans_.emplace(key, p).first->second;
  }

  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.columns);
      fftw_destroy_plan(p.rows);
    }
  }

private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, PassPlans> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// Columns first, then rows, in place; unnormalized.
void column_row_pass(ComplexGrid& g, int sign) {
  const PassPlans& p = cache().get(g.n(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(g.data().data());
  fftw_execute_dft(p.columns, buf, buf);
  fftw_execute_dft(p.rows, buf, buf);
}

ComplexGrid transform(const ComplexGrid& g, int sign) {
  const double scale = 0.5 / static_cast<double>(g.n());

  ComplexGrid a = g;
  column_row_pass(a, sign);

  // Row-then-column order, obtained as the transpose of the column-then-row
  // order applied to g^T.
  ComplexGrid b = sym_permute(g);
  column_row_pass(b, sign);

  const std::size_t n = g.n();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) a(r, c) = (a(r, c) + b(c, r)) * scale;
  return a;
}

}  // namespace

ComplexGrid ft2d(const ComplexGrid& g) { return transform(g, FFTW_FORWARD); }

ComplexGrid ift2d(const ComplexGrid& g) { return transform(g, FFTW_BACKWARD); }

}  // namespace nusrecon
