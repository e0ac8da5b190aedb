#pragma once

#include <stdexcept>
#include <string>

namespace jcir {

enum class ErrorKind {
  InvalidParameter,
  NotSubcritical,
  NotCritical,
  NotSupercritical,
  DomainError,
  OutOfHorizon,
  UnsupportedLevy,
  DegeneratePath,
  HypothesisViolation,
  EmptyInput,
  Numerical,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotSubcritical: return "NotSubcritical";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::NotSupercritical: return "NotSupercritical";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutOfHorizon: return "OutOfHorizon";
    case ErrorKind::UnsupportedLevy: return "UnsupportedLevy";
    case ErrorKind::DegeneratePath: return "DegeneratePath";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::Numerical: return "Numerical";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace jcir
