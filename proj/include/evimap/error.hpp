#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evimap {

enum class ErrorCode {
  NegativeMass,
  SumNotOne,
  InvalidSubset,
  InvalidDomain,
  DomainMismatch,
  TotalConflict,
  EmptyList,
  Unnormalized,
  EmptyValueSet,
  NegativeDistance,
  NonPositiveDistance,
  InvalidModel,
  TrivialObservation,
  NoObservations,
  NonSingletonObservation,
  PointOutOfRange,
  WrongMode,
  InvalidArgument,
  ParseError,
  DomainError,
  UnsupportedDomainSize,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors raised while reading an observation document; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace evimap
