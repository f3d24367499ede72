#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

enum class ErrorKind {
  UnknownAlgorithm,
  InvalidSize,
  InvalidArgument,
  InvalidGraph,
  NoSuchEdge,
  NoSuchVertex,
  DegenerateDistribution,
  CoverageMismatch,
  InfeasibleSpec,
  InfeasibleTarget,
  SyntaxError,
  UseBeforeDef,
  BranchMismatch,
  SchemaMismatch,
  FileNotFound,
  IoError,
  ReplayMismatch,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported through this exception.
// The kind is stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Positioned parse failure from the WPPL-lite scanner.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace forge
