#pragma once

#include <stdexcept>
#include <string>

namespace exthall {

// An enumeration request exceeded the configured candidate budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed backend spec, object expression or input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A two-route equality the library asserts at construction time failed.
// Signals either a backend bug or a falsified model assumption.
struct IdentityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation called on a backend that does not declare the needed capability.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace exthall
