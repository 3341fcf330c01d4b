#pragma once

#include <stdexcept>
#include <string>

namespace adaptcc {

// Invalid parameters or inconsistent inputs (bad generator, mask, M, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LUT store problems: missing key, malformed document.
class LutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingKeyError : public LutError {
 public:
  using LutError::LutError;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adaptcc
