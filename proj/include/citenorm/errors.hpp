#pragma once

#include <stdexcept>
#include <string>

namespace citenorm {

// Every failure the library can report. The names double as the stable,
// machine-greppable codes printed by the CLI (`error[UnknownField]: ...`).
enum class ErrorCode {
  MalformedRow,
  NegativeCount,
  DuplicateCell,
  IncompleteTable,
  EmptyInput,
  UnknownField,
  UnknownYear,
  ZeroDenominator,
  EmptyEntityList,
  InvalidArgument,
  IoError,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::DuplicateCell: return "DuplicateCell";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::UnknownYear: return "UnknownYear";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::EmptyEntityList: return "EmptyEntityList";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace citenorm
