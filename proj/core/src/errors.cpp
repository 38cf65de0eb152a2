#include "mml/errors.hpp"

namespace mml {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::TooManyFailures: return "TooManyFailures";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

bool Error::is_numerical() const noexcept {
  switch (kind_) {
    case ErrorKind::Parse:
    case ErrorKind::Config:
    case ErrorKind::Io:
      return false;
    default:
      return true;
  }
}

}  // namespace mml
