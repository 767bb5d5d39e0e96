#include "apdisc/error.hpp"

namespace apdisc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegenerateModulus: return "DegenerateModulus";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::BelowMinN: return "BelowMinN";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace apdisc
