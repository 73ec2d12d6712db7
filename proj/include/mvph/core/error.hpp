#pragma once

#include <stdexcept>
#include <string>

namespace mvph {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, ragged CSV rows, non-prime moduli, ...
class DataError : public Error {
 public:
  using Error::Error;
};

// A Rips complex grew past the configured simplex budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An algebraic invariant that must hold by construction did not.
// Seeing one of these always means a bug (or a deliberately corrupted run).
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvph
