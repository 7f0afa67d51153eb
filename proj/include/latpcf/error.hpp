#pragma once

#include <stdexcept>
#include <string>

namespace latpcf {

/// Raised when inputs violate a documented precondition (bad dimensions,
/// out-of-range coordinates, unsupported metric/tessellation pairs, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace latpcf
