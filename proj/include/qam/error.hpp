#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qam {

enum class ErrorKind {
  InvalidArgument,
  NonPositiveInterval,
  OutOfDomain,
  OutOfRange,
  Unavailable,
  DerivativeUnavailable,
  SecondDerivativeUnavailable,
  IntervalMismatch,
  NotMonotone,
  DegenerateProbe,
  NoConvergence,
  Overflow,
  NoUpperBound,
  NoUpperBoundInCatalog,
  SlopeOrderViolation,
  EmptyProjection,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` identifies the failure class; callers
/// such as the CLI map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when dyadic refinement gives up; carries the best estimate reached.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best)
      : Error(ErrorKind::NoConvergence, what), best_(best) {}

  double best_value() const noexcept { return best_; }

 private:
  double best_;
};

}  // namespace qam
