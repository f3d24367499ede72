#include "forge/error.hpp"

namespace forge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::NoSuchVertex: return "NoSuchVertex";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::CoverageMismatch: return "CoverageMismatch";
    case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UseBeforeDef: return "UseBeforeDef";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace forge
