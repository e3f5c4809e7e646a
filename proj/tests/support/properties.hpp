#pragma once

// Randomized algebraic laws shared by the property test and the acceptance
// runner. Each suite draws its cases from a fixed seed and reports failures
// instead of asserting, so both callers can decide how to present them.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cosmo/cli/parse.hpp"
#include "cosmo/pfaffian/pfaffian.hpp"
#include "cosmo/weylshift/weylshift.hpp"

namespace testsupport {

using cosmo::sym::FracMatrix;
using cosmo::sym::MPoly;
using cosmo::sym::RatFun;
using cosmo::sym::Rational;
namespace ops = cosmo::ops;

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Rational coefficient() {
    int n = uniform(-9, 9);
    while (n == 0) n = uniform(-9, 9);
    Rational q(n, chance(0.2) ? uniform(2, 5) : 1);
    q.canonicalize();
    return q;
  }

  // few terms, total degree <= max_degree, in the given table variables
  MPoly poly(const std::vector<int>& vars, int terms, int max_degree, bool allow_zero = true) {
    MPoly p;
    do {
      p = MPoly();
      int count = uniform(allow_zero ? 0 : 1, terms);
      for (int t = 0; t < count; ++t) {
        MPoly m(coefficient());
        int budget = uniform(0, max_degree);
        for (int d = 0; d < budget && !vars.empty(); ++d) {
          m *= MPoly::variable(vars[static_cast<size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]);
        }
        p += m;
      }
    } while (!allow_zero && p.is_zero());
    return p;
  }

  RatFun ratfun(const std::vector<int>& vars) {
    MPoly den = MPoly(1);
    int factors = uniform(0, 2);
    for (int f = 0; f < factors; ++f) {
      // mostly linear factors, as in the wavefunction denominators
      den *= chance(0.7) ? poly(vars, 3, 1, false) : poly(vars, 2, 2, false);
    }
    if (den.is_zero()) den = MPoly(1);
    return RatFun::quotient(poly(vars, 3, 2), den);
  }

  ops::WeylOp weyl(const ops::WeylContext& ctx, const std::vector<int>& params, int terms = 3) {
    const size_t m = ctx.vars.size();
    ops::WeylOp out(ctx);
    int count = uniform(1, terms);
    for (int t = 0; t < count; ++t) {
      ops::WeylOp::Key k{std::vector<int>(m), std::vector<int>(m)};
      for (size_t i = 0; i < m; ++i) {
        k.x[i] = uniform(0, 2);
        k.d[i] = uniform(0, 2);
      }
      out.add_term(k, RatFun(poly(params, 2, 1, false)));
    }
    return out;
  }

  ops::ShiftOp shift(const ops::ShiftContext& ctx, const std::vector<int>& coeff_vars, bool rational) {
    ops::ShiftOp out(ctx);
    int count = uniform(1, 3);
    for (int t = 0; t < count; ++t) {
      std::vector<int> a(static_cast<size_t>(ctx.size()));
      for (auto& e : a) e = uniform(-2, 2);
      RatFun c = rational ? ratfun(coeff_vars) : RatFun(poly(coeff_vars, 3, 2, false));
      if (!c.is_zero()) out.add_term(a, c);
    }
    return out;
  }

  FracMatrix invertible(int r, const std::vector<int>& vars) {
    while (true) {
      FracMatrix g(r, r);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          g(i, j) = chance(0.5) ? RatFun(poly(vars, 2, 1)) : RatFun(Rational(uniform(-3, 3)));
        }
      }
      if (!cosmo::sym::frac_det(g).is_zero()) return g;
    }
  }

 private:
  std::mt19937_64 rng_;
};

template <class Body>
SuiteResult run_suite(const std::string& name, int cases, std::uint64_t seed, Body&& body) {
  SuiteResult r{name, 0, 0, {}};
  Random rnd(seed);
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    std::string why;
    bool ok = false;
    try {
      ok = body(rnd, why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (!ok) {
      if (r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
    }
  }
  return r;
}

// Weyl context of the two-site Mellin setting: a1, a2 carry derivatives.
inline const ops::WeylContext& alpha_context() {
  static const auto ctx = ops::WeylContext::make(cosmo::sym::make_table({"a1", "a2", "X1", "X2", "Y"}), {"a1", "a2"});
  return ctx;
}

inline SuiteResult mellin_homomorphism(int cases = 200, std::uint64_t seed = 101) {
  return run_suite("Weyl/Mellin homomorphism", cases, seed, [](Random& r, std::string& why) {
    const auto& ctx = alpha_context();
    auto p = r.weyl(ctx, {2, 3, 4});
    auto q = r.weyl(ctx, {2, 3, 4});
    bool sum = ops::mellin(p + q) == ops::mellin(p) + ops::mellin(q);
    bool product = ops::mellin(p * q) == ops::mellin(p) * ops::mellin(q);
    if (!(sum && product)) why = "P = " + ops::to_string(p) + ", Q = " + ops::to_string(q);
    return sum && product;
  });
}

inline SuiteResult sigma_eps_law(int cases = 200, std::uint64_t seed = 202) {
  return run_suite("sigma-eps commutation", cases, seed, [](Random& r, std::string& why) {
    const auto ctx = ops::shift_context_for(alpha_context());
    std::vector<int> coeff_vars{2, 3, 4, ctx.eps[0], ctx.eps[1]};
    auto s = r.shift(ctx, coeff_vars, r.chance(0.5));
    auto t = r.shift(ctx, coeff_vars, false);
    auto u = r.shift(ctx, coeff_vars, false);
    int i = r.uniform(0, 1);
    int j = 1 - i;
    int power = r.chance(0.5) ? 1 : -1;
    auto sigma = ops::ShiftOp::sigma(ctx, i, power);
    auto eps_i = ops::ShiftOp::eps(ctx, i);
    auto eps_j = ops::ShiftOp::eps(ctx, j);
    auto one = ops::ShiftOp::scalar(ctx, 1);
    // sigma_i^k eps_i = (eps_i + k) sigma_i^k, sigma_i commutes with eps_j
    bool own = sigma * eps_i * s == (eps_i + one * RatFun(power)) * sigma * s;
    bool other = sigma * eps_j * s == eps_j * sigma * s;
    bool inverse = ops::ShiftOp::sigma(ctx, i, -power) * sigma * s == s;
    bool assoc = (s * t) * u == s * (t * u);
    if (!(own && other && inverse && assoc)) why = "S = " + ops::to_string(s);
    return own && other && inverse && assoc;
  });
}

inline SuiteResult ann_generators_annihilate(int cases = 200, std::uint64_t seed = 303) {
  return run_suite("ann_generators annihilation", cases, seed, [](Random& r, std::string& why) {
    const auto& ctx = alpha_context();
    // products of random linear forms and an occasional nonlinear factor
    MPoly p(1);
    int factors = r.uniform(1, 3);
    for (int f = 0; f < factors; ++f) p *= r.chance(0.8) ? r.poly({0, 1, 2, 3, 4}, 4, 1, false) : r.poly({0, 1, 2}, 3, 2, false);
    if (p.is_constant()) p += MPoly::variable(0);
    RatFun inv = RatFun::quotient(1, p);
    for (const auto& g : ops::ann_generators(ctx, p)) {
      if (!ops::weyl_apply(g, inv).is_zero()) {
        why = "p = " + cosmo::sym::to_string(p, *ctx.table) + ", generator " + ops::to_string(g);
        return false;
      }
    }
    return true;
  });
}

inline SuiteResult gauge_group_laws(int cases = 200, std::uint64_t seed = 404) {
  // a flat rank-2 system in (x, y) from <dx^2 - 1, dy - dx>
  static const cosmo::pf::PfaffianSystem flat = [] {
    auto ctx = ops::WeylContext::make(cosmo::sym::make_table({"x", "y"}), {"x", "y"});
    auto dx = ops::WeylOp::derivative(ctx, 0), dy = ops::WeylOp::derivative(ctx, 1);
    return cosmo::pf::derive_pfaffian({dx * dx - ops::WeylOp::scalar(ctx, 1), dy - dx});
  }();
  return run_suite("gauge group laws", cases, seed, [](Random& r, std::string& why) {
    std::vector<int> vars{0, 1};
    cosmo::pf::PfaffianSystem p = flat;
    // a generic (not flat) system exercises the laws beyond the flat case
    if (r.chance(0.5)) {
      for (auto& m : p.matrices) {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) m(i, j) = r.ratfun(vars);
        }
      }
    }
    auto g1 = r.invertible(2, vars);
    auto g2 = r.invertible(2, vars);
    using cosmo::pf::gauge_transform;
    bool identity = gauge_transform(p, FracMatrix::identity(2)).matrices == p.matrices;
    bool compose = gauge_transform(gauge_transform(p, g1), g2).matrices == gauge_transform(p, g2 * g1).matrices;
    bool inverse = gauge_transform(gauge_transform(p, g1), cosmo::sym::frac_inverse(g1)).matrices == p.matrices;
    bool flatness = cosmo::pf::check_flat(p) == cosmo::pf::check_flat(gauge_transform(p, g1));
    if (!identity) why = "identity";
    if (!compose) why = "composition";
    if (!inverse) why = "inverse";
    if (!flatness) why = "flatness not preserved";
    return identity && compose && inverse && flatness;
  });
}

inline SuiteResult render_parse_round_trips(int cases = 200, std::uint64_t seed = 505) {
  return run_suite("render/parse round-trips", cases, seed, [](Random& r, std::string& why) {
    const auto& wctx = alpha_context();
    const auto& table = *wctx.table;
    const auto sctx = ops::shift_context_for(wctx);
    std::vector<int> all{0, 1, 2, 3, 4};

    MPoly p = r.poly(all, 5, 3);
    RatFun f = r.ratfun(all);
    auto w = r.weyl(wctx, {2, 3, 4}, 4);
    if (r.chance(0.3)) w = w * ops::WeylOp::variable(wctx, r.uniform(0, 1), -1);  // Laurent
    auto s = r.shift(sctx, {2, 3, 4, sctx.eps[0], sctx.eps[1]}, r.chance(0.5));

    std::string pt = cosmo::sym::to_string(p, table), ft = cosmo::sym::to_string(f, table);
    std::string wt = ops::to_string(w), st = ops::to_string(s);
    if (!(cosmo::cli::parse_poly(pt, table) == p)) why = "poly " + pt;
    else if (!(cosmo::cli::parse_ratfun(ft, table) == f)) why = "ratfun " + ft;
    else if (!(cosmo::cli::parse_weyl(wt, wctx) == w)) why = "weyl " + wt;
    else if (!(cosmo::cli::parse_shift(st, sctx) == s)) why = "shift " + st;
    return why.empty();
  });
}

inline std::vector<SuiteResult> all_property_suites() {
  return {mellin_homomorphism(), sigma_eps_law(), ann_generators_annihilate(), gauge_group_laws(),
          render_parse_round_trips()};
}

}  // namespace testsupport
