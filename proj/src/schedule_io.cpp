#include "nusrecon/schedule_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "nusrecon/error.hpp"

namespace nusrecon {
namespace {

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream ls(line.substr(1));
  std::string tok;
  while (ls >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const char* key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FormatError(std::string("schedule header missing ") + key);
  return it->second;
}

}  // namespace

void write_schedule(std::ostream& os, const Schedule& s) {
  os << std::setprecision(17);
  os << "# kind=" << to_string(s.kind) << " n=" << s.n << " theta=" << s.theta << " seed=" << s.seed
     << " rate=" << s.nominal_rate << '\n';
  for (const Cell& c : s.acquired) os << c.row << ' ' << c.col << '\n';
  if (s.kind == ScheduleKind::scpg) {
    os << "# copies\n";
    for (const CopyEntry& e : s.copies)
      os << e.src.row << ' ' << e.src.col << ' ' << e.dst.row << ' ' << e.dst.col << '\n';
  }
}

Schedule read_schedule(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("#", 0) != 0) throw FormatError("schedule file lacks header line");
  const auto kv = parse_header(line);
  Schedule s;
  try {
    s.kind = parse_schedule_kind(require(kv, "kind"));
    s.n = std::stoull(require(kv, "n"));
    s.theta = std::stod(require(kv, "theta"));
    s.seed = std::stoull(require(kv, "seed"));
    s.nominal_rate = std::stod(require(kv, "rate"));
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("bad schedule header: ") + e.what());
  }

  bool in_copies = false;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("copies") != std::string::npos) in_copies = true;
      continue;
    }
    std::istringstream ls(line);
    if (!in_copies) {
      Cell c;
      if (!(ls >> c.row >> c.col)) throw FormatError("bad schedule point at line " + std::to_string(lineno));
      s.acquired.push_back(c);
    } else {
      CopyEntry e;
      if (!(ls >> e.src.row >> e.src.col >> e.dst.row >> e.dst.col))
        throw FormatError("bad copy entry at line " + std::to_string(lineno));
      s.copies.push_back(e);
    }
  }
  if (!std::is_sorted(s.acquired.begin(), s.acquired.end(), canonical_less))
    throw FormatError("schedule points not in canonical order");
  try {
    validate(s);
  } catch (const InvalidParameter& e) {
    throw FormatError(std::string("schedule violates invariants: ") + e.what());
  }
  return s;
}

void write_schedule(const std::filesystem::path& path, const Schedule& s) {
  std::ofstream os(path, std::ios::out | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  write_schedule(os, s);
  if (!os) throw IoError("write failed: " + path.string());
}

Schedule read_schedule(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  return read_schedule(is);
}

}  // namespace nusrecon
