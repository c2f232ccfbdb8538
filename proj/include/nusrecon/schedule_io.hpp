#pragma once

#include <filesystem>
#include <iosfwd>

#include "nusrecon/schedule.hpp"

namespace nusrecon {

// Text schedule file:
//   # kind=<kind> n=<n> theta=<theta> seed=<seed> rate=<rate>
//   i j                      (acquired, 0-based, canonical order)
//   # copies                 (scpg only)
//   src_i src_j dst_i dst_j
void write_schedule(std::ostream& os, const Schedule& s);
Schedule read_schedule(std::istream& is);

void write_schedule(const std::filesystem::path& path, const Schedule& s);
Schedule read_schedule(const std::filesystem::path& path);

}  // namespace nusrecon
