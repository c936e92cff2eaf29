#pragma once

#include <stdexcept>
#include <string>

namespace gsa {

enum class ErrorKind {
  InstanceMismatch,
  IllFormed,
  ConditionViolated,
  OracleBudget,
  NotInvariant,
  NeedsField,
  NonAbelian,
  StarInjectivityFails,
  NotAnIdeal,
  NotGraded,
  Parse,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InstanceMismatch: return "InstanceMismatch";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::OracleBudget: return "OracleBudget";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NeedsField: return "NeedsField";
    case ErrorKind::NonAbelian: return "NonAbelian";
    case ErrorKind::StarInjectivityFails: return "StarInjectivityFails";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotGraded: return "NotGraded";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace gsa
