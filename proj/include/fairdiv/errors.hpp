#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files or flag values.
struct ParseError : Error {
  using Error::Error;
};

// Violated structural preconditions (incomplete allocation, unknown good, ...).
struct StructuralError : Error {
  using Error::Error;
};

// A mechanism was fed a valuation variant it does not accept.
struct RestrictionError : Error {
  using Error::Error;
};

// Work size exceeds an enumeration cap or search budget.
struct CapacityError : Error {
  using Error::Error;
};

// Exact arithmetic left the 64-bit range.
struct ArithmeticOverflowError : Error {
  using Error::Error;
};

}  // namespace fairdiv
