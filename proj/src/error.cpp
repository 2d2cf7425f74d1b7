#include "spn/error.hpp"

namespace spn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kEnvironment: return "environment";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace spn
