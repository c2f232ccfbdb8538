#include "nusrecon/synth.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>

#include "nusrecon/error.hpp"
#include "nusrecon/rng.hpp"

namespace nusrecon {

PeakList make_peaklist(const PeakSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw InvalidParameter("grid side must be >= 2");
  if (spec.n_diag > n) throw InvalidParameter("more diagonal peaks than diagonal cells");
  if (spec.n_cross > n * (n - 1) / 2) throw InvalidParameter("more cross pairs than off-diagonal pairs");
  if (spec.diag_lo > spec.diag_hi || spec.cross_lo > spec.cross_hi) throw InvalidParameter("empty amplitude range");
  if (!(spec.decay_alpha >= 0.0)) throw InvalidParameter("decay must be >= 0");

  Rng rng(derive_seed(spec.seed, "peaklist"));
  std::vector<char> taken(n * n, 0);
  PeakList pl;
  pl.n = n;
  pl.decay_alpha = spec.decay_alpha;
  pl.seed = spec.seed;

  while (pl.diag.size() < spec.n_diag) {
    const auto b = static_cast<std::uint32_t>(rng.uniform_int(n));
    if (taken[b + b * n]) continue;
    taken[b + b * n] = 1;
    pl.diag.push_back({b, rng.uniform(spec.diag_lo, spec.diag_hi)});
  }
  while (pl.cross.size() < spec.n_cross) {
    const auto b1 = static_cast<std::uint32_t>(rng.uniform_int(n));
    const auto b2 = static_cast<std::uint32_t>(rng.uniform_int(n));
    if (b1 == b2 || taken[b1 + b2 * n]) continue;
    taken[b1 + b2 * n] = 1;
    taken[b2 + b1 * n] = 1;
    pl.cross.push_back({b1, b2, rng.uniform(spec.cross_lo, spec.cross_hi)});
  }
  return pl;
}

ComplexGrid synth_fid(const PeakList& pl) {
  const std::size_t n = pl.n;
  // e[bin][t-1] = exp(2 pi j (bin/n) t - alpha t), computed once per used bin.
  std::vector<std::vector<cplx>> lines(n);
  auto line = [&](std::uint32_t bin) -> const std::vector<cplx>& {
    auto& v = lines[bin];
    if (v.empty()) {
      v.resize(n);
      const double f = static_cast<double>(bin) / static_cast<double>(n);
      for (std::size_t t = 1; t <= n; ++t) {
        const double td = static_cast<double>(t);
        v[t - 1] = std::exp(cplx(-pl.decay_alpha * td, 2.0 * std::numbers::pi * f * td));
      }
    }
    return v;
  };

  ComplexGrid w(n);
  for (const DiagPeak& p : pl.diag) {
    const auto& e = line(p.bin);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) w(r, c) += p.amplitude * (e[r] * e[c]);
  }
  for (const CrossPeak& p : pl.cross) {
    const auto& e1 = line(p.bin1);
    const auto& e2 = line(p.bin2);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) w(r, c) += p.amplitude * (e1[r] * e2[c] + e1[c] * e2[r]);
  }
  return w;
}

ComplexGrid normalize_max(const ComplexGrid& g) {
  const double m = max_abs(g.data());
  if (m == 0.0) throw DegenerateInput("cannot normalize an all-zero grid");
  ComplexGrid out = g;
  for (cplx& z : out.data()) z /= m;
  return out;
}

ComplexGrid add_noise(const ComplexGrid& g, const NoiseSpec& ns) {
  if (!(ns.sigma >= 0.0)) throw InvalidParameter("noise sigma must be >= 0");
  ComplexGrid out = g;
  if (ns.sigma == 0.0) return out;
  Rng rng(derive_seed(ns.seed, "noise"));
  for (cplx& z : out.data()) {
    const double re = rng.normal();
    const double im = rng.normal();
    z += cplx(ns.sigma * re, ns.sigma * im);
  }
  return out;
}

void write_peaklist(std::ostream& os, const PeakList& pl) {
  os << std::setprecision(17);
  os << "# n=" << pl.n << " seed=" << pl.seed << " alpha=" << pl.decay_alpha << '\n';
  const double n = static_cast<double>(pl.n);
  for (const DiagPeak& p : pl.diag) os << "diag " << p.bin / n << ' ' << p.amplitude << '\n';
  for (const CrossPeak& p : pl.cross) os << "cross " << p.bin1 / n << ' ' << p.bin2 / n << ' ' << p.amplitude << '\n';
}

namespace {

std::uint32_t to_bin(double f, std::size_t n) {
  const double b = std::round(f * static_cast<double>(n));
  if (!(b >= 0.0 && b < static_cast<double>(n)) || std::abs(b - f * static_cast<double>(n)) > 1e-6)
    throw FormatError("peak frequency is not on the 1/n grid");
  return static_cast<std::uint32_t>(b);
}

}  // namespace

PeakList read_peaklist(std::istream& is) {
  PeakList pl;
  pl.diag.clear();
  std::string line;
  if (!std::getline(is, line) || line.rfind("#", 0) != 0) throw FormatError("peak list lacks header");
  {
    std::istringstream hs(line.substr(1));
    std::string tok;
    bool have_n = false;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      try {
        if (key == "n") {
          pl.n = std::stoull(val);
          have_n = true;
        } else if (key == "seed") {
          pl.seed = std::stoull(val);
        } else if (key == "alpha") {
          pl.decay_alpha = std::stod(val);
        }
      } catch (const std::logic_error&) {
        throw FormatError("bad peak list header value: " + tok);
      }
    }
    if (!have_n || pl.n < 2) throw FormatError("peak list header missing n");
  }
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "diag") {
      double f, d;
      if (!(ls >> f >> d)) throw FormatError("bad diag line: " + line);
      pl.diag.push_back({to_bin(f, pl.n), d});
    } else if (tag == "cross") {
      double f1, f2, c;
      if (!(ls >> f1 >> f2 >> c)) throw FormatError("bad cross line: " + line);
      const CrossPeak p{to_bin(f1, pl.n), to_bin(f2, pl.n), c};
      if (p.bin1 == p.bin2) throw FormatError("cross peak on the diagonal");
      pl.cross.push_back(p);
    } else {
      throw FormatError("unknown peak list entry: " + line);
    }
  }
  return pl;
}

void write_peaklist(const std::filesystem::path& path, const PeakList& pl) {
  std::ofstream os(path, std::ios::out | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  write_peaklist(os, pl);
  if (!os) throw IoError("write failed: " + path.string());
}

PeakList read_peaklist(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  return read_peaklist(is);
}

}  // namespace nusrecon
