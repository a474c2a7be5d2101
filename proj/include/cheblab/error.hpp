#pragma once

#include <stdexcept>
#include <string>

namespace cheblab {

/// Base class for numerical failures. Precondition violations use
/// std::invalid_argument instead, so callers can tell usage errors apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "numerical"; }
};

}  // namespace cheblab
