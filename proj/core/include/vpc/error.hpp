#pragma once

#include <stdexcept>
#include <string>

namespace vpc {

enum class ErrorCode {
  BackendMismatch,
  ClosureOverflow,
  Unsupported,
  NotASubgroup,
  PreconditionViolated,
  EmptyBound,
  NotCellular,
  NotSubcomplex,
  FamilyMismatch,
  FamilyViolation,
  EmptyCatalog,
  NotNormal,
  InfiniteMorphismSet,
  WindowIncomplete,
  WindowMismatch,
  GroupMismatch,
  RuleNotApplicable,
  MissingData,
  MissingCertificate,
  ParseError,
  InvalidInput,
  Overflow,
};

const char *error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char *error_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::BackendMismatch: return "BackendMismatch";
  case ErrorCode::ClosureOverflow: return "ClosureOverflow";
  case ErrorCode::Unsupported: return "Unsupported";
  case ErrorCode::NotASubgroup: return "NotASubgroup";
  case ErrorCode::PreconditionViolated: return "PreconditionViolated";
  case ErrorCode::EmptyBound: return "EmptyBound";
  case ErrorCode::NotCellular: return "NotCellular";
  case ErrorCode::NotSubcomplex: return "NotSubcomplex";
  case ErrorCode::FamilyMismatch: return "FamilyMismatch";
  case ErrorCode::FamilyViolation: return "FamilyViolation";
  case ErrorCode::EmptyCatalog: return "EmptyCatalog";
  case ErrorCode::NotNormal: return "NotNormal";
  case ErrorCode::InfiniteMorphismSet: return "InfiniteMorphismSet";
  case ErrorCode::WindowIncomplete: return "WindowIncomplete";
  case ErrorCode::WindowMismatch: return "WindowMismatch";
  case ErrorCode::GroupMismatch: return "GroupMismatch";
  case ErrorCode::RuleNotApplicable: return "RuleNotApplicable";
  case ErrorCode::MissingData: return "MissingData";
  case ErrorCode::MissingCertificate: return "MissingCertificate";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::InvalidInput: return "InvalidInput";
  case ErrorCode::Overflow: return "Overflow";
  }
  return "Error";
}

} // namespace vpc
