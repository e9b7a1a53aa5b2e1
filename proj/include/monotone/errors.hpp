#pragma once

#include <stdexcept>
#include <string>

namespace monotone {

// Error taxonomy. The CLI maps each family to a distinct exit code so that
// scripts can tell "bad input" from "search gave up" from "numerics broke".
// Verdicts (Monotone / NotMonotone / Inconclusive) are values, never errors.

// Malformed user input: unparsable function spec, interval, or config.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated mathematical precondition: point outside a domain, dimension
// mismatch, invalid composition, bad node set.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A sampling or search budget ran out before producing a valid object
// (rejection sampling, probe schedule, proposal budget).
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: eigensolver non-convergence (carries the residual),
// non-finite intermediate values.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

}
