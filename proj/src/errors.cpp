#include "rbci/errors.hpp"

namespace rbci {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDesign: return "InvalidDesign";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::CrossedBounds: return "CrossedBounds";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace rbci
