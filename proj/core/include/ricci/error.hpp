#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ricci {

enum class ErrorKind {
  InvalidInput,
  Disconnected,
  NotErgodic,
  NotAnEdge,
  NotDistinct,
  LemmaViolation,
  BoundViolation,
  IsolatedState,
  BadGrid,
  OutOfRange,
  InputNotLipschitz,
  ContractionViolation,
  InequalityViolation,
  TooLarge,
  BadParams,
  BadM,
  UnsupportedModel,
  PatternTooLarge,
  IncompatiblePair,
  LipschitzViolation,
  MissingKappa,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (notably the
/// CLI) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotErgodic: return "NotErgodic";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::NotDistinct: return "NotDistinct";
    case ErrorKind::LemmaViolation: return "LemmaViolation";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::IsolatedState: return "IsolatedState";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InputNotLipschitz: return "InputNotLipschitz";
    case ErrorKind::ContractionViolation: return "ContractionViolation";
    case ErrorKind::InequalityViolation: return "InequalityViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::BadM: return "BadM";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::PatternTooLarge: return "PatternTooLarge";
    case ErrorKind::IncompatiblePair: return "IncompatiblePair";
    case ErrorKind::LipschitzViolation: return "LipschitzViolation";
    case ErrorKind::MissingKappa: return "MissingKappa";
  }
  return "Unknown";
}

}  // namespace ricci
