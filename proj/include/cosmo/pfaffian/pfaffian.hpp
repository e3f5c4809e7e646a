#pragma once

#include <string>
#include <vector>

#include "cosmo/symcore/matrix.hpp"
#include "cosmo/weylshift/weylshift.hpp"

namespace cosmo::pf {

using sym::FracMatrix;
using sym::MPoly;
using sym::RatFun;

/// Derivative monomial d^a, one exponent per differential variable.
using DMono = std::vector<int>;

/// dF = M_i F for F = (b_1 . f, ..., b_r . f), one matrix per differential
/// variable; row j of M_i holds the normal form of d_i * b_j.
struct PfaffianSystem {
  ops::WeylContext context;
  std::vector<DMono> basis;  // basis.front() is 1
  std::vector<FracMatrix> matrices;

  int rank() const noexcept { return static_cast<int>(basis.size()); }
};

struct DeriveOptions {
  int max_order = 4;
  /// When nonempty, the result is expressed in this basis instead of the
  /// graded-lex staircase (by the change-of-basis gauge transformation).
  std::vector<DMono> basis;
};

/// Prolongs the generators by every d^g with |g| <= k, eliminates the
/// derivative monomials (graded lex, d_1 > d_2 > ...) over the rational
/// function field and reads off the staircase. k grows until the staircase
/// closes under every d_i and has the same size for two consecutive k.
/// Throws RankNotDetermined if that does not happen by max_order, NotSolvable
/// for a zero generator or a requested basis that does not span.
PfaffianSystem derive_pfaffian(const std::vector<ops::WeylOp>& generators, const DeriveOptions& options = {});

/// M_i -> G M_i G^-1 + (d_i G) G^-1. Throws DimensionMismatch or SingularGauge.
PfaffianSystem gauge_transform(const PfaffianSystem& p, const FracMatrix& g);

/// d_i M_j + M_j M_i == d_j M_i + M_i M_j for every pair.
bool check_flat(const PfaffianSystem& p);

/// Normalized factors of the denominators of all entries that involve a
/// differential variable, sorted.
std::vector<MPoly> singular_locus(const PfaffianSystem& p);

/// Every entry equals eps times an eps-free rational function.
bool eps_factorized(const PfaffianSystem& p, int eps_var);

std::string to_string(const DMono& m, const ops::WeylContext& ctx);  // "1", "dX1*dX2", "dY^2"
/// Basis line, then each matrix row-major, one row per line.
std::string render(const PfaffianSystem& p);

}  // namespace cosmo::pf
