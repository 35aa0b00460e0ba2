#pragma once

#include <stdexcept>
#include <string>

namespace sylvester {

// Raised when a computation would produce a value larger than the configured
// digit budget, or would need more refinement steps than the hard index cap.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when interval refinement in score comparison reaches the index cap.
// For distinct normal forms this cannot happen; seeing it means a bug.
class RefinementGuardError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sylvester
