#pragma once

#include <stdexcept>
#include <string>

namespace penta {

enum class ErrorCode {
  BadAngleSum,
  NotClosed,
  NonConvex,
  DegenerateEdge,
  UnknownType,
  NoSolution,
  ConvergenceFailure,
  NoRecipeFound,
  InvalidNodeSet,
  WrongFamily,
  IncompleteCorona,
  InvalidNode,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadAngleSum: return "BadAngleSum";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NoRecipeFound: return "NoRecipeFound";
    case ErrorCode::InvalidNodeSet: return "InvalidNodeSet";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::IncompleteCorona: return "IncompleteCorona";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace penta
