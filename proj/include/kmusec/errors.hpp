#pragma once

#include <stdexcept>
#include <string>

namespace kmusec {

enum class ErrorCode {
  Domain = 1,
  DegenerateParameter,
  ConvergenceFailure,
  TermBudgetExceeded,
  NumericInstability,
  Io,
  Parse,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct DegenerateParameterError : Error {
  explicit DegenerateParameterError(const std::string& w) : Error(ErrorCode::DegenerateParameter, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorCode::ConvergenceFailure, w) {}
};
struct TermBudgetError : Error {
  explicit TermBudgetError(const std::string& w) : Error(ErrorCode::TermBudgetExceeded, w) {}
};
struct NumericInstabilityError : Error {
  explicit NumericInstabilityError(const std::string& w) : Error(ErrorCode::NumericInstability, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};

}  // namespace kmusec
