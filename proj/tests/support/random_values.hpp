#pragma once

#include <random>

#include "cosmo/symcore/matrix.hpp"

namespace testsupport {

using cosmo::sym::MPoly;
using cosmo::sym::Monomial;
using cosmo::sym::Rational;
using cosmo::sym::RatFun;

inline Rational random_rational(std::mt19937_64& rng, int range = 9, int max_den = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline MPoly random_poly(std::mt19937_64& rng, int nvars, int max_terms = 4, int max_deg = 2) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> expo(0, max_deg);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  std::vector<MPoly::Term> terms;
  int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    Monomial m;
    int budget = expo(rng);
    for (int k = 0; k < budget; ++k) m = m * Monomial::var(var(rng));
    Rational c = random_rational(rng);
    if (c == 0) c = 1;
    terms.push_back({m, c});
  }
  return MPoly::from_terms(std::move(terms));
}

inline MPoly random_nonzero_poly(std::mt19937_64& rng, int nvars, int max_terms = 4, int max_deg = 2) {
  for (;;) {
    MPoly p = random_poly(rng, nvars, max_terms, max_deg);
    if (!p.is_zero()) return p;
  }
}

inline RatFun random_ratfun(std::mt19937_64& rng, int nvars, int max_terms = 3, int max_deg = 2) {
  return RatFun::quotient(random_poly(rng, nvars, max_terms, max_deg), random_nonzero_poly(rng, nvars, max_terms, max_deg));
}

}  // namespace testsupport
