#pragma once

#include <stdexcept>
#include <string>

namespace bvlab {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input exceeds a documented size guard (partition weight, sieve length, modulus).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A precondition between arguments does not hold (mismatched lengths, gcd(a,q) != 1, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A lookup falls outside a precomputed table.
class RangeError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Quadrature or iteration failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Two routes to the same quantity disagree (root number, identity checks).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace bvlab
