#pragma once

#include <stdexcept>
#include <string>

namespace oc {

enum class ErrorCode {
  InvalidArgument = 1,
  Syntax,
  VariableOutOfRange,
  NegativeExponent,
  NotQuasiHomogeneous,
  DimensionMismatch,
  InternalInconsistency,
  NonAbelianPolarization,
  UnsupportedStructure,
  UnsupportedFamily,
  UnboundedSublevelSet,
  ValidationFailure,
  DomainTooSmall,
  GridTooCoarse,
  FactorizationBreakdown,
  NonConvergent,
  InsufficientSpan,
  TailBoundFailure,
  ResourceBudget,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(ErrorCode::Syntax, msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NonAbelianPolarization: return "NonAbelianPolarization";
    case ErrorCode::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::UnboundedSublevelSet: return "UnboundedSublevelSet";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::FactorizationBreakdown: return "FactorizationBreakdown";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::TailBoundFailure: return "TailBoundFailure";
    case ErrorCode::ResourceBudget: return "ResourceBudget";
  }
  return "Unknown";
}

}  // namespace oc
