#pragma once

#include <stdexcept>
#include <string>

namespace centrank {

// Bad input data: malformed files, count mismatches, missing references.
// The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Contradictory or out-of-range configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace centrank
