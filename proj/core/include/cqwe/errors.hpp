#pragma once

#include <stdexcept>
#include <string>

namespace cqwe {

// Precondition failures on values use std::invalid_argument directly.
// The two classes below separate the failure kinds the CLI reports with
// distinct exit codes.

/// Vector or matrix sizes that do not agree (e.g. a waveform on the wrong grid).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cqwe
