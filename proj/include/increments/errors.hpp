#pragma once

#include <stdexcept>

namespace increments {

// Raised when an operation is invoked out of order (e.g. marching row n
// before rows 0..n-1 exist).
class StateError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Raised when an invariant that a valid input guarantees is found broken.
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace increments
