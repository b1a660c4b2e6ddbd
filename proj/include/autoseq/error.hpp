#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autoseq {

enum class ErrorKind {
  InvalidBase,
  InvalidDigit,
  InvalidArgument,
  InsufficientData,
  MissingTransition,
  UnknownState,
  UnknownSymbol,
  UnknownName,
  NotProlongable,
  UnsupportedErasing,
  UnsupportedForm,
  PreconditionViolation,
  BudgetExceeded,
  DeterminismConflict,
  Incomplete,
  IncreasingEpsilon,
  NumericError,
  PerfectSquare,
  CapExceeded,
  AlphabetMismatch,
  Parse,
  InvalidCertificate,
  VerificationFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. The kind is what callers branch on; the message is
/// for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace autoseq

#include <vector>

namespace autoseq {

/// Result of a successful validation; hard violations throw Error instead.
struct ValidationReport {
  std::vector<std::string> warnings;
};

}  // namespace autoseq
