#pragma once

#include <stdexcept>
#include <string>

namespace lsc {

// Bad user-facing configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver failed to reach tolerance (CLI exit code 2).
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration/size guard tripped (CLI exit code 3).
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lsc
