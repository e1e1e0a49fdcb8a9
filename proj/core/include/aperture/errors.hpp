#pragma once

#include <stdexcept>
#include <string>

namespace aperture {

/// Invalid configuration or violated input contract. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown at run time (singular factorization, non-finite
/// intermediate values). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aperture
