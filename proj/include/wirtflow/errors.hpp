#pragma once

#include <stdexcept>
#include <string>

namespace wirtflow {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched or invalid vector/operator dimensions.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// An operation's stated precondition does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// The power method hit Y v = 0.
class DegenerateOperatorError : public Error {
 public:
  explicit DegenerateOperatorError(const std::string& what) : Error(what) {}
};

/// File reading/writing failed at the OS level.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

/// A binary file exists but does not match its documented layout.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

}  // namespace wirtflow
