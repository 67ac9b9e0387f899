#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fasim {

enum class ErrorKind {
  EmptyInput,
  MalformedNumber,
  DivisionByZero,
  Overflow,
  NonTerminatingDecimal,
  DegreeZero,
  NoConvergence,
  DegenerateODE,
  ZeroDenominator,
  NonzeroInitialConditions,
  TailUnbounded,
  QuadratureFailure,
  PoleOnAxis,
  RepeatedPole,
  NotStrictlyProper,
  ImproperSystem,
  PoleAtZero,
  MissingComponent,
  NonPositiveComponent,
  UnknownFilter,
  MalformedXML,
  SchemaViolation,
  MalformedODEFile,
  InvalidArgument,
  IOError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fasim
