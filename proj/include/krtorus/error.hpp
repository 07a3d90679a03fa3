#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krtorus {

/// Diagnostic codes. Input rejections map to CLI exit code 1, internal
/// consistency failures to exit code 2.
enum class ErrorCode {
  kParse,
  kIndexRange,
  kDegenerateTriangle,
  kDuplicateTriangle,
  kBoundaryEdge,
  kNonOrientable,
  kNonManifold,
  kDisconnected,
  kNotTorus,
  kConstantField,
  kNotTree,
  kDegenerateLevel,
  kNoSpecialVertex,
  kHypothesisViolation,
  kRange,
  kGroupMismatch,
  kVerificationFailed,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

/// True for codes that indicate bad or unsupported input rather than a bug.
bool is_input_rejection(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void check_internal(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::kInternal, what);
}

}  // namespace krtorus
