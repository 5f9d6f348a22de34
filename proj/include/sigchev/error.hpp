#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sigchev {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReduciblePolynomial,
  UnsupportedFactorization,
  DuplicateGenerator,
  NotWellDefined,
  NotFinite,
  CyclicStructureBroken,
  ConstantPolynomial,
  CoefficientNotField,
  AmbientNotClosed,
  PreimageNotComputable,
  FiberNotFinite,
  ConditionOneFails,
  NotPrimeInScope,
  BoundExceeded,
  CommutationFails,
  NoSigmaStructure,
  OutOfScope,
  BaseMismatch,
  SampleDependent,
  NotStabilized,
  SyntaxError,
  UnknownName,
  TypeMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the typed kinds above.
class SigmaError : public std::runtime_error {
 public:
  SigmaError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw SigmaError(kind, what); }

}  // namespace sigchev
