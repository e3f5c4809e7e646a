#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cosmo/symcore/matrix.hpp"
#include "cosmo/weylshift/weylshift.hpp"

namespace cosmo::cli {

// Recursive-descent expression parsers sharing one grammar:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ['^' ['-'] integer]
//   atom    := number | name | '(' sum ')'
// Products are evaluated left to right without reordering, which matters in
// the operator modes. Errors are ParseError (with line and column) or
// UnknownVariable.

sym::MPoly parse_poly(const std::string& text, const sym::VarTable& table);
sym::RatFun parse_ratfun(const std::string& text, const sym::VarTable& table);

/// Names: table variables, `dV` for the derivative in variable V, and `dK`
/// for the derivative in `aK`. Division is only by scalars; negative powers
/// only of scalars and of differential variables (giving a Laurent operator).
ops::WeylOp parse_weyl(const std::string& text, const ops::WeylContext& ctx);

/// Names: table variables and `sK` for the shift in the K-th eps variable.
ops::ShiftOp parse_shift(const std::string& text, const ops::ShiftContext& ctx);

/// A named family of operators sharing one context, stored as JSON:
/// {"variables": [...], "differential": [...], "operators": {"P1": "...", ...},
///  "ideal": ["P1 + P2", ...]}
/// The optional "ideal" lists generators as signed sums of operator names;
/// without it every operator is a generator.
struct OperatorSet {
  ops::WeylContext context;
  std::vector<std::pair<std::string, ops::WeylOp>> operators;
  std::vector<ops::WeylOp> generators;

  const ops::WeylOp& at(const std::string& name) const;  // throws UnknownVariable
};
/// `differential` overrides the file's list of differential variables.
OperatorSet parse_operator_set(const std::string& json_text, const std::vector<std::string>* differential = nullptr);

/// JSON array of rows, each an array of rational-function strings.
sym::FracMatrix parse_matrix(const std::string& json_text, const sym::VarTable& table);

}  // namespace cosmo::cli
