#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument falls outside a size guard (enumeration, sieve, search...).
/// Callers are expected to fall back to a different backend or shrink the
/// instance; the CLI maps this to exit code 3.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural invariant (bad coloring, malformed document).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rainbow
