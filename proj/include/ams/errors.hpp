#pragma once

#include <stdexcept>
#include <string>

namespace ams {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different alphabets.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A model or matrix breaks a structural invariant (stochasticity, sizes).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A checker was called on an inadmissible argument, e.g. a quasi-stationarity
/// test against a non-stationary source. Distinct from a negative verdict.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// The classifier produced verdicts that contradict the inclusion chain
/// stationary, quasi-stationary, R-AMS, AMS. Always a bug.
class HierarchyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ams
