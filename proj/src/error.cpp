#include "rabe/error.hpp"

namespace rabe {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kSideMismatch: return "side-mismatch";
    case ErrorCode::kBackendMismatch: return "backend-mismatch";
    case ErrorCode::kDivisionByZero: return "division-by-zero";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kNonMonotone: return "non-monotone";
    case ErrorCode::kCapacityExhausted: return "capacity-exhausted";
    case ErrorCode::kInvalidNode: return "invalid-node";
    case ErrorCode::kUnknownIdentity: return "unknown-identity";
    case ErrorCode::kUnsatisfiedPolicy: return "unsatisfied-policy";
    case ErrorCode::kMissingComponent: return "missing-component";
    case ErrorCode::kDecode: return "decode";
    case ErrorCode::kHashMismatch: return "hash-mismatch";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConstraintViolation: return "constraint-violation";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kNotVulnerable: return "not-vulnerable";
  }
  return "unknown";
}

}  // namespace rabe
