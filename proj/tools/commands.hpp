#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nusrecon/montecarlo.hpp"

namespace nusrecon::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidParameters = 2,
  kIoFailure = 3,
  kFormatViolation = 4,
};

/// Runs one command line (without the program name). Machine-readable
/// results go to `out`, progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads "key = value" lines (# comments) on top of `base`.
MonteCarloConfig read_montecarlo_config(std::istream& is, MonteCarloConfig base = {});

}  // namespace nusrecon::cli
