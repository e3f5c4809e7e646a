#pragma once

#include <stdexcept>
#include <string>

namespace cosmo {

enum class ErrorKind {
  ZeroDenominator,
  NotSquare,
  DimensionMismatch,
  InvalidGraph,
  InvalidSubgraph,
  NonPositivePoint,
  DivergentParameters,
  VariableMismatch,
  ZeroPolynomial,
  MissingTableEntry,
  DegeneratePoint,
  RankNotDetermined,
  NotSolvable,
  SingularGauge,
  ParseError,
  UnknownVariable,
  Overflow,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI)
// can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::ParseError, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::InvalidSubgraph: return "InvalidSubgraph";
    case ErrorKind::NonPositivePoint: return "NonPositivePoint";
    case ErrorKind::DivergentParameters: return "DivergentParameters";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::MissingTableEntry: return "MissingTableEntry";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::RankNotDetermined: return "RankNotDetermined";
    case ErrorKind::NotSolvable: return "NotSolvable";
    case ErrorKind::SingularGauge: return "SingularGauge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace cosmo
