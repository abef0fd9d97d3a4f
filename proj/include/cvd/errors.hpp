#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cvd {

enum class ErrorKind {
  // input / structural errors
  SyntaxError,
  NonPolynomialExponent,
  NotMonic,
  DegreeZero,
  DegreeTooSmall,
  ZeroPolynomial,
  InvalidPermutation,
  DuplicatePoints,
  ConstantInput,
  InvalidInput,
  // numerical failures
  OverflowToInfinity,
  NoConvergence,
  NonFiniteSample,
  ZeroNearContour,
  NotNearInteger,
  ResolventNearSingular,
  PathCollision,
  NewtonDivergence,
  DegenerateCriticalPoint,
  WindowFiberUnstable,
  GridExhausted,
  DeltaTooLarge,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonPolynomialExponent: return "NonPolynomialExponent";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::ConstantInput: return "ConstantInput";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::OverflowToInfinity: return "OverflowToInfinity";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::ZeroNearContour: return "ZeroNearContour";
    case ErrorKind::NotNearInteger: return "NotNearInteger";
    case ErrorKind::ResolventNearSingular: return "ResolventNearSingular";
    case ErrorKind::PathCollision: return "PathCollision";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
    case ErrorKind::WindowFiberUnstable: return "WindowFiberUnstable";
    case ErrorKind::GridExhausted: return "GridExhausted";
    case ErrorKind::DeltaTooLarge: return "DeltaTooLarge";
  }
  return "Unknown";
}

/// Library-wide exception. `stage` is filled in by pipeline drivers so a
/// failure deep inside a multi-step computation names the step that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* kind_name() const { return error_kind_name(kind_); }

  const std::string& stage() const { return stage_; }
  void set_stage(std::string s) {
    if (stage_.empty()) stage_ = std::move(s);
  }

  long position() const { return position_; }
  void set_position(long p) { position_ = p; }

  bool is_input_error() const {
    switch (kind_) {
      case ErrorKind::SyntaxError:
      case ErrorKind::NonPolynomialExponent:
      case ErrorKind::NotMonic:
      case ErrorKind::DegreeZero:
      case ErrorKind::DegreeTooSmall:
      case ErrorKind::ZeroPolynomial:
      case ErrorKind::InvalidPermutation:
      case ErrorKind::DuplicatePoints:
      case ErrorKind::ConstantInput:
      case ErrorKind::InvalidInput:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
  std::string stage_;
  long position_ = -1;
};

}  // namespace cvd
