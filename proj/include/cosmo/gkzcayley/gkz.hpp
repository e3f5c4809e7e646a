#pragma once

#include <string>
#include <vector>

#include "cosmo/graphkit/graph.hpp"
#include "cosmo/symcore/matrix.hpp"

namespace cosmo::gkz {

using sym::Integer;
using sym::IntMatrix;
using sym::MPoly;
using sym::Rational;

/// Exponent vectors of one Laurent polynomial, one column of A each.
struct Support {
  std::vector<std::vector<int>> points;
};

/// Supports of the shifted linear forms L_i = l_i(X + alpha, Y): alpha_v for
/// v in the subgraph, then the constant. `values` holds what each generic
/// coefficient c_1, c_2, ... stands for (1 in front of alpha, l_i for the constant).
struct GraphSupports {
  int n = 0;
  std::vector<Support> supports;
  std::vector<MPoly> values;  // over the graph's variable table
};

GraphSupports cayley_from_graph(const graph::KinGraph& g);

/// a + b * eps.
struct EpsAffine {
  Rational constant;
  Rational eps;
  friend bool operator==(const EpsAffine&, const EpsAffine&) = default;
};

/// -(eps + 1) per alpha row, -1 per indicator row.
std::vector<EpsAffine> default_kappa(int n, int k);

struct Binomial {
  std::vector<int> plus;   // exponents of d^a
  std::vector<int> minus;  // exponents of d^b
};

struct EulerGenerator {
  std::vector<int> theta;  // coefficient of theta_u per column
  EpsAffine constant;      // equals -kappa_row
};

struct CayleyData {
  IntMatrix A;
  std::vector<EpsAffine> kappa;
  std::vector<Binomial> binomials;
  std::vector<EulerGenerator> euler;
};

/// A has the n alpha rows first, then one indicator row per support. Throws
/// DimensionMismatch when kappa has the wrong length or the supports
/// disagree on n.
CayleyData gkz_system(const std::vector<Support>& supports, const std::vector<EpsAffine>& kappa);

std::string to_string(const EpsAffine& e);        // "-(eps+1)", "-1", "0"
std::string to_string(const Binomial& b);         // "d2*d7 - d3*d6"
std::string to_string(const EulerGenerator& g);   // "theta1 + theta4 + (eps+1)"
/// Human-readable report: A row-major, the substitution, binomials, Euler operators.
std::string render(const CayleyData& data, const GraphSupports* origin, const sym::VarTable* table);

}  // namespace cosmo::gkz
