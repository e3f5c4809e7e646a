#include "cosmo/symcore/gcd.hpp"

#include <algorithm>
#include <random>

#include "cosmo/error.hpp"

namespace cosmo::sym {

namespace {

std::vector<int> vars_of(const MPoly& p) {
  std::vector<int> vs;
  for (int v = 0; v < p.used_vars(); ++v) {
    if (p.depends_on(v)) vs.push_back(v);
  }
  return vs;
}

MPoly leading_in(const MPoly& p, int var, int& deg) {
  auto cs = p.coefficients_in(var);
  deg = static_cast<int>(cs.size()) - 1;
  return cs.back();
}

// Pseudo-remainder of f by g with respect to var.
MPoly prem(MPoly f, const MPoly& g, int var) {
  int dg = 0;
  MPoly lg = leading_in(g, var, dg);
  while (!f.is_zero()) {
    int df = 0;
    MPoly lf = leading_in(f, var, df);
    if (df < dg) break;
    f = lg * f - lf * g.mul_monomial(Monomial::var(var, df - dg), 1);
  }
  return f;
}

// Euclid over Q for polynomials in the single variable `var`.
MPoly univariate_gcd(MPoly f, MPoly g, int var) {
  while (!g.is_zero()) {
    const int dg = g.degree(var);
    while (!f.is_zero() && f.degree(var) >= dg) {
      const auto& lf = f.leading();
      const auto& lg = g.leading();
      f -= g.mul_monomial(lf.mono / lg.mono, lf.coeff / lg.coeff);
    }
    std::swap(f, g);
  }
  return f;
}

// Evaluates every variable except `var` at a small integer point. When the
// images keep their degree in `var` and are coprime, the primitive parts are
// coprime as well.
bool coprime_by_evaluation(const MPoly& f, const MPoly& g, int var) {
  static const int kPoint[] = {3, -5, 7, 2, -11, 13, 5, -3, 17, 4, -7, 19};
  MPoly fe = f, ge = g;
  for (int v = 0; v < std::max(f.used_vars(), g.used_vars()); ++v) {
    if (v == var) continue;
    Rational z = kPoint[v % 12] + v / 12;
    if (fe.depends_on(v)) fe = fe.evaluate_var(v, z);
    if (ge.depends_on(v)) ge = ge.evaluate_var(v, z);
  }
  if (fe.degree(var) != f.degree(var) || ge.degree(var) != g.degree(var)) return false;
  return univariate_gcd(fe, ge, var).is_constant();
}

MPoly gcd_primitive(MPoly a, MPoly b);

MPoly prs_gcd(MPoly f, MPoly g, int var) {
  if (f.degree(var) < g.degree(var)) std::swap(f, g);
  if (coprime_by_evaluation(f, g, var)) return MPoly(1);
  for (;;) {
    MPoly r = prem(f, g, var);
    if (r.is_zero()) return (g / content_in(g, var)).primitive();
    if (r.degree(var) == 0) return MPoly(1);
    f = std::move(g);
    g = (r / content_in(r, var)).primitive();
  }
}

// Both arguments primitive with integer coefficients and no monomial content.
MPoly gcd_primitive(MPoly a, MPoly b) {
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a == b) return a;
  for (;;) {
    auto va = vars_of(a);
    auto vb = vars_of(b);
    bool changed = false;
    for (int v : va) {
      if (!b.depends_on(v)) {
        a = content_in(a, v);
        changed = true;
        break;
      }
    }
    if (!changed) {
      for (int v : vb) {
        if (!a.depends_on(v)) {
          b = content_in(b, v);
          changed = true;
          break;
        }
      }
    }
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (!changed) break;
  }
  MPoly q;
  if (a.size() <= b.size() && a.degree() <= b.degree() && b.divide_exact(a, q)) return a.primitive();
  if (b.size() <= a.size() && b.degree() <= a.degree() && a.divide_exact(b, q)) return b.primitive();

  auto vs = vars_of(a);
  int var = vs.front();
  int best = 1 << 30;
  for (int v : vs) {
    int d = std::max(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      var = v;
    }
  }
  MPoly ca = content_in(a, var);
  MPoly cb = content_in(b, var);
  MPoly pa = ca.is_constant() ? a : a / ca;
  MPoly pb = cb.is_constant() ? b : b / cb;
  MPoly c = gcd(ca, cb);
  MPoly g = prs_gcd(pa.primitive(), pb.primitive(), var);
  return (c * g).primitive();
}

struct HeuristicFailed {};

Integer max_norm(const MPoly& p) {
  Integer m = 0;
  for (const auto& t : p.terms()) {
    Integer a = abs(t.coeff.get_num());
    if (a > m) m = a;
  }
  return m;
}

Integer integer_content(const MPoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

// Recovers a polynomial in `var` from its image at var = xi, reading the
// balanced xi-adic digits of every coefficient.
MPoly xi_adic_lift(MPoly h, int var, const Integer& xi) {
  std::vector<MPoly::Term> out;
  Integer half = xi / 2;
  for (int k = 0; !h.is_zero(); ++k) {
    std::vector<MPoly::Term> digit;
    for (const auto& t : h.terms()) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_num_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) digit.push_back({t.mono, Rational(r)});
    }
    MPoly d = MPoly::from_terms(digit);
    h -= d;
    h *= Rational(1, 1) / Rational(xi);
    for (const auto& t : d.terms()) out.push_back({t.mono * Monomial::var(var, k), t.coeff});
    if (k > 4096) throw HeuristicFailed{};
  }
  return MPoly::from_terms(std::move(out));
}

// Heuristic gcd of integer polynomials (evaluation at a large integer and
// xi-adic reconstruction, checked by trial division). Keeps integer content.
MPoly heuristic_gcd(const MPoly& f0, const MPoly& g0) {
  if (f0.is_zero()) return g0.primitive() * Rational(integer_content(g0));
  if (g0.is_zero()) return f0.primitive() * Rational(integer_content(f0));
  Integer cf = integer_content(f0), cg = integer_content(g0);
  Integer c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f0.is_constant() || g0.is_constant()) return MPoly(Rational(c));
  MPoly f = f0 * Rational(Rational(1) / Rational(cf));
  MPoly g = g0 * Rational(Rational(1) / Rational(cg));
  int var = 0;
  while (!f.depends_on(var) && !g.depends_on(var)) ++var;

  Integer fn = max_norm(f), gn = max_norm(g);
  Integer bound = 2 * std::min(fn, gn) + 29;
  Integer root = sqrt(bound);
  Integer flc = abs(f.leading_coeff().get_num()), glc = abs(g.leading_coeff().get_num());
  Integer xi = std::max(Integer(std::min(bound, Integer(99 * root))), Integer(2 * std::min(Integer(fn / flc), Integer(gn / glc)) + 2));
  for (int attempt = 0; attempt < 6; ++attempt) {
    MPoly fe = f.evaluate_var(var, Rational(xi));
    MPoly ge = g.evaluate_var(var, Rational(xi));
    if (!fe.is_zero() && !ge.is_zero()) {
      MPoly h = xi_adic_lift(heuristic_gcd(fe, ge), var, xi);
      if (!h.is_zero()) {
        h = h.primitive();
        MPoly q;
        if (f.divide_exact(h, q) && g.divide_exact(h, q)) return h * Rational(c);
      }
    }
    Integer s = sqrt(Integer(sqrt(xi)));
    xi = 73794 * xi * s / 27011;
  }
  throw HeuristicFailed{};
}

}  // namespace

MPoly content_in(const MPoly& p, int var) {
  auto cs = p.coefficients_in(var);
  MPoly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MPoly(1);
  }
  return g.is_zero() ? MPoly() : g.primitive();
}

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  MPoly pa = a.primitive();
  MPoly pb = b.primitive();
  Monomial ma = pa.monomial_content();
  Monomial mb = pb.monomial_content();
  Monomial m = ma.gcd(mb);
  MPoly ra = pa.divide_monomial(ma), rb = pb.divide_monomial(mb);
  MPoly core;
  try {
    core = heuristic_gcd(ra, rb).primitive();
  } catch (const HeuristicFailed&) {
    core = gcd_primitive(ra, rb);
  }
  return core.mul_monomial(m, 1).primitive();
}

// ---------------------------------------------------------------- roots

namespace {

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> primes;
  Integer p = 2;
  while (p * p <= n && p < 2000000) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      primes.emplace_back(p, e);
    }
    p += (p == 2) ? 1 : 2;
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [q, e] : primes) {
    size_t count = divs.size();
    Integer pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= q;
      for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pw);
    }
  }
  return divs;
}

Rational horner(const std::vector<MPoly>& coeffs, const Rational& x) {
  Rational acc = 0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k].constant_value();
  return acc;
}

}  // namespace

std::vector<Rational> rational_roots(const MPoly& p, int var) {
  std::vector<Rational> roots;
  if (p.is_zero() || p.degree(var) <= 0) return roots;
  MPoly q = p.primitive();
  auto coeffs = q.coefficients_in(var);
  size_t low = 0;
  while (coeffs[low].is_zero()) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
  }
  if (coeffs.size() < 2) return roots;
  Integer a0 = coeffs.front().constant_value().get_num();
  Integer an = coeffs.back().constant_value().get_num();
  auto num_divs = divisors(a0);
  auto den_divs = divisors(an);
  std::vector<Rational> seen;
  for (const auto& d : den_divs) {
    for (const auto& n : num_divs) {
      for (int sign : {1, -1}) {
        Rational x(Integer(n * sign), d);
        x.canonicalize();
        if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
        seen.push_back(x);
        if (horner(coeffs, x) == 0) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------- linear factors

namespace {

// Distinct linear factors of a squarefree polynomial that involve `var`.
std::vector<MPoly> linear_factors_in(const MPoly& sq, int var) {
  std::vector<MPoly> found;
  const int d = sq.degree(var);
  const int nv = sq.used_vars();
  auto others = vars_of(sq);
  std::mt19937 rng(12345U + static_cast<unsigned>(var));
  std::uniform_int_distribution<int> pick(-9, 9);
  MPoly dv = sq.derivative(var);
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<Rational> z(static_cast<size_t>(nv), Rational(0));
    MPoly q = sq;
    for (int v : others) {
      if (v == var) continue;
      int value = pick(rng);
      if (value == 0) value = attempt + 1;
      z[static_cast<size_t>(v)] = value;
      q = q.evaluate_var(v, value);
    }
    if (q.degree(var) != d) continue;
    if (!gcd(q, q.derivative(var)).is_constant()) continue;
    for (const auto& r : rational_roots(q, var)) {
      auto pt = z;
      pt[static_cast<size_t>(var)] = r;
      Rational pv = dv.evaluate(pt);
      if (pv == 0) continue;
      MPoly lin = MPoly::variable(var) - MPoly(r);
      for (int v : others) {
        if (v == var) continue;
        Rational b = sq.derivative(v).evaluate(pt) / pv;
        if (b != 0) lin += b * (MPoly::variable(v) - MPoly(z[static_cast<size_t>(v)]));
      }
      lin = lin.primitive();
      MPoly quo;
      if (sq.divide_exact(lin, quo)) found.push_back(lin);
    }
    return found;
  }
  return found;
}

}  // namespace

Factorization factor_linear(const MPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor zero");
  Factorization out;
  MPoly rest = p.primitive(out.unit);
  Monomial mc = rest.monomial_content();
  for (int v = 0; v < kMaxVars; ++v) {
    if (mc[v] > 0) out.linear.emplace_back(MPoly::variable(v), mc[v]);
  }
  rest = rest.divide_monomial(mc);
  for (int var = 0; var < rest.used_vars(); ++var) {
    if (!rest.depends_on(var)) continue;
    MPoly sq = rest / gcd(rest, rest.derivative(var));
    for (const auto& lin : linear_factors_in(sq.primitive(), var)) {
      int mult = 0;
      MPoly quo;
      while (rest.divide_exact(lin, quo)) {
        rest = quo;
        ++mult;
      }
      if (mult > 0) out.linear.emplace_back(lin, mult);
    }
  }
  Rational s;
  out.rest = rest.primitive(s);
  out.unit *= s;
  std::sort(out.linear.begin(), out.linear.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
  return out;
}

}  // namespace cosmo::sym
