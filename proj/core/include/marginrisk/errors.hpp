#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace marginrisk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller-supplied data (non-finite values, empty inputs, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or malformed fuzzy-set definitions.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A window or history holds no samples to compute statistics from.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// No rule fires for the queried (mean, std) pair.
class UncoveredInput : public Error {
 public:
  using Error::Error;
};

/// Attitude channels were requested but are absent.
class AttitudeUnavailable : public InputError {
 public:
  using InputError::InputError;
};

/// Malformed CSV or JSON file. `line()` is 1-based, 0 when not applicable.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace marginrisk
