#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matinv2 {

enum class ErrorKind {
  kNonPrimeModulus,
  kUnsupportedExtensionDegree,
  kFieldMismatch,
  kDivisionByZero,
  kSingularConjugator,
  kIndexOutOfRange,
  kPreconditionViolated,
  kDimensionMismatch,
  kDescriptorNotInSet,
  kOracleLimit,
  kRingMismatch,
  kMalformedChain,
  kIllegalDenominator,
  kMissingParameter,
  kUnitVanishes,
  kParse,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace matinv2
