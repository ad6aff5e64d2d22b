#pragma once

#include <stdexcept>
#include <string>

namespace pertlab {

// Bad user input: malformed perturbation text, invalid grids, out-of-range
// options. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Odd power in a perturbation or polynomial that must be even.
class ParityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Overflow guard, tolerance failure, or non-finite intermediate.
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pertlab
