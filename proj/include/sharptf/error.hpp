#pragma once

#include <stdexcept>
#include <string>

namespace sharptf {

/// Input data violates a documented invariant (bad signal, bad spec, bad matrix).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Transform or pipeline parameters are unusable (bin count, window length).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sharptf
