#pragma once

#include <stdexcept>
#include <string>

namespace orbitdist {

// Bad user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Precision or resource budget exhausted (CLI exit code 3).
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace orbitdist
