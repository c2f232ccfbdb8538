#pragma once

#include <stdexcept>
#include <string>

namespace nusrecon {

// Bad argument values, out-of-range indices, mismatched sizes.
class InvalidParameter : public std::invalid_argument {
public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Inputs that are well-formed but make the quantity undefined (all-zero grid,
// zero reference norm, zero variance).
class DegenerateInput : public std::domain_error {
public:
  explicit DegenerateInput(const std::string& what) : std::domain_error(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A file was readable but its contents do not follow the expected layout.
class FormatError : public std::runtime_error {
public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nusrecon
