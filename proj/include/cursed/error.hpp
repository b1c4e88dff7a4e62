#pragma once

#include <stdexcept>
#include <string>

namespace cursed {

enum class ErrorKind {
  PriorNotFullSupport,
  PriorNotNormalized,
  EmptyActionSet,
  MissingPayoff,
  DanglingHistory,
  StageOutOfRange,
  SyntaxError,
  UndeclaredLabel,
  DuplicateDeclaration,
  ZeroProbabilityObservation,
  RequiresTotallyMixed,
  LimitDidNotStabilize,
  NotOneStage,
  CombinatorialLimitExceeded,
  InvalidAlpha,
  InvalidEpsilon,
  InvalidY,
  InvalidParameter,
  InvalidProfile,
  UnknownClaim,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PriorNotFullSupport: return "PriorNotFullSupport";
    case ErrorKind::PriorNotNormalized: return "PriorNotNormalized";
    case ErrorKind::EmptyActionSet: return "EmptyActionSet";
    case ErrorKind::MissingPayoff: return "MissingPayoff";
    case ErrorKind::DanglingHistory: return "DanglingHistory";
    case ErrorKind::StageOutOfRange: return "StageOutOfRange";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredLabel: return "UndeclaredLabel";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::ZeroProbabilityObservation: return "ZeroProbabilityObservation";
    case ErrorKind::RequiresTotallyMixed: return "RequiresTotallyMixed";
    case ErrorKind::LimitDidNotStabilize: return "LimitDidNotStabilize";
    case ErrorKind::NotOneStage: return "NotOneStage";
    case ErrorKind::CombinatorialLimitExceeded: return "CombinatorialLimitExceeded";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::InvalidY: return "InvalidY";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::UnknownClaim: return "UnknownClaim";
  }
  return "Unknown";
}

// Every failure raised by the library. Parse errors carry a 1-based source
// position; line == 0 means "no position".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(format(kind, message, line, column)),
        kind_(kind),
        line_(line),
        column_(column) {}

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message, int line, int column) {
    std::string out = to_string(kind);
    if (line > 0) out += " at " + std::to_string(line) + ":" + std::to_string(column);
    return out + ": " + message;
  }

  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace cursed
