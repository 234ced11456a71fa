#pragma once

#include <stdexcept>
#include <string>

namespace sttrack {

// Configuration file / key problems. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (CSV parsing, invariant violations).
// CLI maps this to exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at runtime (controller blow-up, Riccati non-convergence).
// CLI maps this to exit code 4.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sttrack
