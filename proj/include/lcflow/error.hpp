#pragma once

#include <stdexcept>
#include <string>

namespace lcflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis index outside [0, dim).
class InvalidAxisError : public Error {
 public:
  using Error::Error;
};

/// Component count does not match what the operator needs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Director length fell below the degeneracy threshold somewhere on the grid.
class DegenerateDirectorError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared in the evolved state (suspected blow-up or
/// under-resolution).
class NumericalOverflowError : public Error {
 public:
  using Error::Error;
};

/// Scenario parameters not representable on the grid.
class UnderResolvedError : public Error {
 public:
  using Error::Error;
};

/// Gronwall fit impossible: the controlled norms grew while the monitor
/// integral stayed at zero.
class EnvelopeUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        key_(std::move(key)) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  int line() const noexcept { return line_; }
  /// Offending key, empty when unknown.
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Snapshot or time-series file malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcflow
