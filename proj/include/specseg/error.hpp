#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specseg {

enum class ErrorCode {
  InvalidArgument,
  EmptyDocument,
  EmptyVocabulary,
  DimensionError,
  AlignmentError,
  SingularScaling,
  ConvergenceFailure,
  KTooLarge,
  DegenerateTopic,
  UndefinedProbability,
  EmptyTopic,
  LengthMismatch,
  InvalidProbability,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Numerical failures map to a different CLI exit status than input errors.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::AlignmentError: return "AlignmentError";
    case ErrorCode::SingularScaling: return "SingularScaling";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::DegenerateTopic: return "DegenerateTopic";
    case ErrorCode::UndefinedProbability: return "UndefinedProbability";
    case ErrorCode::EmptyTopic: return "EmptyTopic";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

inline bool is_numerical(ErrorCode code) {
  return code == ErrorCode::SingularScaling || code == ErrorCode::ConvergenceFailure;
}

}  // namespace specseg
