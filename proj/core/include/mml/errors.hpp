#pragma once

#include <stdexcept>
#include <string>

namespace mml {

enum class ErrorKind {
  Domain,
  NotPositiveDefinite,
  NonFiniteEvaluation,
  QuadratureNotConverged,
  SymmetryViolation,
  NoConvergence,
  DegenerateData,
  TooManyFailures,
  OracleMismatch,
  Parse,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base for every error raised by the library. The kind lets callers (the
/// CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics rather than of the inputs/config.
  bool is_numerical() const noexcept;

 private:
  ErrorKind kind_;
};

#define MML_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what)                      \
        : Error(ErrorKind::Name, what) {}                       \
  };

// clang-format off
MML_DEFINE_ERROR(NotPositiveDefinite)
MML_DEFINE_ERROR(NonFiniteEvaluation)
MML_DEFINE_ERROR(QuadratureNotConverged)
MML_DEFINE_ERROR(SymmetryViolation)
MML_DEFINE_ERROR(NoConvergence)
MML_DEFINE_ERROR(DegenerateData)
MML_DEFINE_ERROR(TooManyFailures)
MML_DEFINE_ERROR(OracleMismatch)
// clang-format on

#undef MML_DEFINE_ERROR

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace mml
