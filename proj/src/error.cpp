#include "matinv2/error.hpp"

namespace matinv2 {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::kUnsupportedExtensionDegree: return "UnsupportedExtensionDegree";
    case ErrorKind::kFieldMismatch: return "FieldMismatch";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kSingularConjugator: return "SingularConjugator";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDescriptorNotInSet: return "DescriptorNotInSet";
    case ErrorKind::kOracleLimit: return "OracleLimit";
    case ErrorKind::kRingMismatch: return "RingMismatch";
    case ErrorKind::kMalformedChain: return "MalformedChain";
    case ErrorKind::kIllegalDenominator: return "IllegalDenominator";
    case ErrorKind::kMissingParameter: return "MissingParameter";
    case ErrorKind::kUnitVanishes: return "UnitVanishes";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace matinv2
