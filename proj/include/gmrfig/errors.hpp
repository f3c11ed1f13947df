#pragma once

#include <stdexcept>
#include <string>

namespace gmrfig {

/// Raised when a caller passes parameters that violate an operation's preconditions.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a field carries no information about a quantity (constant field,
/// zero neighbour covariance).
class DegenerateField : public std::domain_error {
 public:
  explicit DegenerateField(const std::string& what) : std::domain_error(what) {}
};

/// Malformed snapshot, trajectory or curve input.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gmrfig
