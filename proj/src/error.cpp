#include "rfp/error.hpp"

namespace rfp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoTessellation: return "NoTessellation";
    case ErrorCode::SingularDistance: return "SingularDistance";
    case ErrorCode::BoundNotValid: return "BoundNotValid";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::UnsupportedParameterChange: return "UnsupportedParameterChange";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::RangeError: return "RangeError";
  }
  return "Unknown";
}

}  // namespace rfp
