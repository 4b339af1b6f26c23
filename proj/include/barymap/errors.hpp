#pragma once

#include <stdexcept>
#include <string>

namespace barymap {

// Rejected problem: a constructor guard or measure precondition failed.
// The CLI maps this to its own exit code, distinct from malformed input.
struct GuardViolation : std::runtime_error {
  explicit GuardViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace barymap
