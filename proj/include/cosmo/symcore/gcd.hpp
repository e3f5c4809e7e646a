#pragma once

#include <utility>
#include <vector>

#include "cosmo/symcore/mpoly.hpp"

namespace cosmo::sym {

/// Greatest common divisor over Q[x], returned as the primitive integer
/// associate with positive leading coefficient (1 for coprime inputs).
///
/// Recursive content / primitive-part reduction: split off the monomial
/// content, remove variables that occur in only one argument by taking
/// contents, then run a primitive remainder sequence in a shared variable.
MPoly gcd(const MPoly& a, const MPoly& b);

/// gcd of the coefficients of p viewed as a polynomial in `var`.
MPoly content_in(const MPoly& p, int var);

struct Factorization {
  Rational unit = 1;                         // p == unit * prod(f^m) * rest
  std::vector<std::pair<MPoly, int>> linear;  // normalized, sorted
  MPoly rest = MPoly(1);                      // primitive; no linear factors
};

/// Splits off every factor of total degree one (with multiplicity).
/// Whatever remains is returned unsplit in `rest`.
Factorization factor_linear(const MPoly& p);

/// Rational roots of a univariate polynomial in `var` (other variables must
/// not occur). Each root is listed once.
std::vector<Rational> rational_roots(const MPoly& p, int var);

}  // namespace cosmo::sym
