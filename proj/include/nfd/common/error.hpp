#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfd {

enum class ErrorCode {
  TargetNotEmpty,
  IoFailure,
  NotAWorkspace,
  ParseError,
  InvariantViolation,
  LockHeld,
  InvalidTag,
  EmptyBody,
  SourceMissing,
  InvalidConfig,
  InvalidArgument,
  EmptyScope,
  OverlappingPendingBatch,
  UnknownBatch,
  BatchNotPending,
  BatchNotDecided,
  MissingDecision,
  InvalidDecision,
  UnknownTargetSkill,
  ZeroConsumption,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every engine operation. The code is stable and is
/// what the CLI and HTTP layers map onto exit codes and status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

Error parse_error(std::string_view file, int line, std::string_view reason);

}  // namespace nfd
