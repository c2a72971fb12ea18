#pragma once

#include <stdexcept>
#include <string>

namespace esoclcp {

enum class ErrorKind {
  SingularMatrix,
  DimensionMismatch,
  NonFinite,
  InvalidArgument,
  ZeroU,
  ShapeUnsupported,
  DegenerateT,
  InfeasibleXhat,
  TooLarge,
  Parse,
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::SingularMatrix: return "SingularMatrix";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NonFinite: return "NonFinite";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::ZeroU: return "ZeroU";
  case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
  case ErrorKind::DegenerateT: return "DegenerateT";
  case ErrorKind::InfeasibleXhat: return "InfeasibleXhat";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace esoclcp
