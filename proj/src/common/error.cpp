#include "nfd/common/error.hpp"

#include <fmt/format.h>

namespace nfd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TargetNotEmpty: return "TargetNotEmpty";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::NotAWorkspace: return "NotAWorkspace";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::LockHeld: return "LockHeld";
    case ErrorCode::InvalidTag: return "InvalidTag";
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::SourceMissing: return "SourceMissing";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::OverlappingPendingBatch: return "OverlappingPendingBatch";
    case ErrorCode::UnknownBatch: return "UnknownBatch";
    case ErrorCode::BatchNotPending: return "BatchNotPending";
    case ErrorCode::BatchNotDecided: return "BatchNotDecided";
    case ErrorCode::MissingDecision: return "MissingDecision";
    case ErrorCode::InvalidDecision: return "InvalidDecision";
    case ErrorCode::UnknownTargetSkill: return "UnknownTargetSkill";
    case ErrorCode::ZeroConsumption: return "ZeroConsumption";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error parse_error(std::string_view file, int line, std::string_view reason) {
  return Error(ErrorCode::ParseError, fmt::format("{}:{}: {}", file, line, reason));
}

}  // namespace nfd
