#pragma once

#include <stdexcept>
#include <string>

namespace rabe {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kSideMismatch,
  kBackendMismatch,
  kDivisionByZero,
  kParse,
  kNonMonotone,
  kCapacityExhausted,
  kInvalidNode,
  kUnknownIdentity,
  kUnsatisfiedPolicy,
  kMissingComponent,
  kDecode,
  kHashMismatch,
  kIo,
  kConstraintViolation,
  kBudgetExceeded,
  kEmptyInput,
  kNotVulnerable,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rabe
