#pragma once

#include <stdexcept>
#include <string>

namespace twext {

// Raised for any violation of a documented domain precondition.  The CLI maps
// these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a documented resource cap (group order, algebra size, ...).
class ResourceCap : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace twext
