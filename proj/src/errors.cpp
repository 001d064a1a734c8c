#include "kmusec/errors.hpp"

namespace kmusec {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::DegenerateParameter: return "degenerate parameter";
    case ErrorCode::ConvergenceFailure: return "convergence failure";
    case ErrorCode::TermBudgetExceeded: return "term budget exceeded";
    case ErrorCode::NumericInstability: return "numeric instability";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

}  // namespace kmusec
