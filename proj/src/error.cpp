#include "krtorus/error.hpp"

namespace krtorus {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIndexRange: return "index-range";
    case ErrorCode::kDegenerateTriangle: return "degenerate-triangle";
    case ErrorCode::kDuplicateTriangle: return "duplicate-triangle";
    case ErrorCode::kBoundaryEdge: return "boundary-edge";
    case ErrorCode::kNonOrientable: return "non-orientable";
    case ErrorCode::kNonManifold: return "non-manifold";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kNotTorus: return "not-torus";
    case ErrorCode::kConstantField: return "constant-field";
    case ErrorCode::kNotTree: return "not-tree";
    case ErrorCode::kDegenerateLevel: return "degenerate-level";
    case ErrorCode::kNoSpecialVertex: return "no-special-vertex";
    case ErrorCode::kHypothesisViolation: return "hypothesis-violation";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kGroupMismatch: return "group-mismatch";
    case ErrorCode::kVerificationFailed: return "verification-failed";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

bool is_input_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::kHypothesisViolation:
    case ErrorCode::kVerificationFailed:
    case ErrorCode::kInternal:
      return false;
    default:
      return true;
  }
}

}  // namespace krtorus
