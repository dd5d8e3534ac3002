#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tlc {

enum class ErrorKind {
  InvalidArgument,
  SingularMatrix,
  SingularBlock,
  NoConvergence,
  NotHermitian,
  InvalidM,
  DegenerateX,
  InvalidPartition,
  RecursionDepthExceeded,
  ZeroDiagonal,
  DegenerateDelta,
  SizeMismatch,
  DimensionTooLarge,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this exception type; `kind()`
/// carries the machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::DegenerateX: return "DegenerateX";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::RecursionDepthExceeded: return "RecursionDepthExceeded";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::DegenerateDelta: return "DegenerateDelta";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
  }
  return "Unknown";
}

}  // namespace tlc
