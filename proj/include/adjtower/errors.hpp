#pragma once

#include <stdexcept>
#include <string>

namespace adjtower {

// Malformed text input (operators, polynomials, series, documents).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition failed or an object is not of the required shape.
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bounded search came back empty.
struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace adjtower
