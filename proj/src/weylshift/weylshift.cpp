#include "cosmo/weylshift/weylshift.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "cosmo/error.hpp"

namespace cosmo::ops {

using sym::Integer;

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// C(b, k) * c (c-1) ... (c-k+1); c may be negative
Rational leibniz_factor(int b, int k, int c) {
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(k));
  Integer fall = 1;
  for (int j = 0; j < k; ++j) fall *= c - j;
  return Rational(binom * fall);
}

std::string wrap_coefficient(const RatFun& c, const sym::VarTable& table) {
  std::string s = sym::to_string(c, table);
  bool single = c.is_polynomial() && c.num().size() == 1;
  return single ? s : "(" + s + ")";
}

// Join rendered terms, folding a leading '-' into the separator.
std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string& t = parts[i];
    if (i == 0) {
      out += t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

std::string power(const std::string& name, int k) { return k == 1 ? name : name + "^" + std::to_string(k); }

// Render coefficient times a product of named factors.
std::string render_term(const RatFun& c, const std::vector<std::string>& factors, const sym::VarTable& table) {
  std::string mono;
  for (const auto& f : factors) mono += (mono.empty() ? "" : "*") + f;
  if (mono.empty()) return wrap_coefficient(c, table);
  if (c == RatFun(1)) return mono;
  if (c == RatFun(-1)) return "-" + mono;
  return wrap_coefficient(c, table) + "*" + mono;
}

}  // namespace

WeylContext WeylContext::make(VarTablePtr table, const std::vector<std::string>& names) {
  WeylContext ctx{std::move(table), {}};
  for (const auto& n : names) ctx.vars.push_back(ctx.table->index(n));
  return ctx;
}

int WeylContext::slot(int var) const {
  auto it = std::find(vars.begin(), vars.end(), var);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

bool operator<(const WeylOp::Key& a, const WeylOp::Key& b) {
  int da = total(a.d), db = total(b.d);
  if (da != db) return da > db;
  if (a.d != b.d) return a.d > b.d;
  int xa = total(a.x), xb = total(b.x);
  if (xa != xb) return xa > xb;
  return a.x > b.x;
}

WeylOp::WeylOp(WeylContext ctx, bool laurent) : ctx_(std::move(ctx)), laurent_(laurent) {}

WeylOp WeylOp::scalar(const WeylContext& ctx, const RatFun& c) {
  for (int v : ctx.vars) {
    if (c.depends_on(v)) throw Error(ErrorKind::VariableMismatch, "scalar coefficient depends on a differential variable");
  }
  WeylOp p(ctx);
  std::vector<int> zero(ctx.vars.size(), 0);
  p.add_term({zero, zero}, c);
  return p;
}

WeylOp WeylOp::variable(const WeylContext& ctx, int slot, int power) {
  WeylOp p(ctx, power < 0);
  Key k{std::vector<int>(ctx.vars.size(), 0), std::vector<int>(ctx.vars.size(), 0)};
  k.x.at(static_cast<size_t>(slot)) = power;
  p.add_term(k, 1);
  return p;
}

WeylOp WeylOp::derivative(const WeylContext& ctx, int slot, int order) {
  if (order < 0) throw Error(ErrorKind::VariableMismatch, "negative derivative order");
  WeylOp p(ctx);
  Key k{std::vector<int>(ctx.vars.size(), 0), std::vector<int>(ctx.vars.size(), 0)};
  k.d.at(static_cast<size_t>(slot)) = order;
  p.add_term(k, 1);
  return p;
}

WeylOp WeylOp::multiplication(const WeylContext& ctx, const RatFun& f) {
  for (int v : ctx.vars) {
    if (f.den().depends_on(v)) {
      throw Error(ErrorKind::VariableMismatch, "denominator depends on a differential variable");
    }
  }
  WeylOp p(ctx);
  RatFun inv_den = RatFun::quotient(1, f.den());
  for (const auto& t : f.num().terms()) {
    Key k{std::vector<int>(ctx.vars.size(), 0), std::vector<int>(ctx.vars.size(), 0)};
    sym::Monomial rest = t.mono;
    for (size_t i = 0; i < ctx.vars.size(); ++i) {
      int v = ctx.vars[i];
      k.x[i] = t.mono[v];
      rest.degree = static_cast<std::uint16_t>(rest.degree - rest.exp[static_cast<size_t>(v)]);
      rest.exp[static_cast<size_t>(v)] = 0;
    }
    p.add_term(k, RatFun(MPoly::monomial(rest, t.coeff)) * inv_den);
  }
  return p;
}

bool WeylOp::is_scalar() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Key& k = terms_.begin()->first;
  auto zero = [](int e) { return e == 0; };
  return std::all_of(k.x.begin(), k.x.end(), zero) && std::all_of(k.d.begin(), k.d.end(), zero);
}

int WeylOp::order() const {
  int best = 0;
  for (const auto& [k, c] : terms_) best = std::max(best, total(k.d));
  return best;
}

void WeylOp::add_term(const Key& k, const RatFun& c) {
  if (c.is_zero()) return;
  if (!laurent_ && std::any_of(k.x.begin(), k.x.end(), [](int e) { return e < 0; })) laurent_ = true;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void WeylOp::check_same(const WeylOp& o) const {
  if (!(ctx_ == o.ctx_)) throw Error(ErrorKind::VariableMismatch, "operators live in different contexts");
}

WeylOp WeylOp::operator-() const {
  WeylOp r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  check_same(o);
  laurent_ = laurent_ || o.laurent_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) { return *this += -o; }

WeylOp& WeylOp::operator*=(const RatFun& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

// d^b x^c = sum_k C(b,k) c(c-1)...(c-k+1) x^(c-k) d^(b-k), one variable at a time
WeylOp operator*(const WeylOp& a, const WeylOp& b) {
  a.check_same(b);
  const size_t n = a.ctx_.vars.size();
  WeylOp r(a.ctx_, a.laurent_ || b.laurent_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      RatFun c = ca * cb;
      // enumerate k_i in [0, ka.d_i]
      std::vector<int> k(n, 0);
      while (true) {
        Rational factor = 1;
        for (size_t i = 0; i < n && factor != 0; ++i) factor *= leibniz_factor(ka.d[i], k[i], kb.x[i]);
        if (factor != 0) {
          WeylOp::Key key{ka.x, kb.d};
          for (size_t i = 0; i < n; ++i) {
            key.x[i] += kb.x[i] - k[i];
            key.d[i] += ka.d[i] - k[i];
          }
          r.add_term(key, c * RatFun(factor));
        }
        size_t i = 0;
        while (i < n && k[i] == ka.d[i]) k[i++] = 0;
        if (i == n) break;
        ++k[i];
      }
    }
  }
  return r;
}

WeylOp weyl_mul(const WeylOp& p, const WeylOp& q) { return p * q; }

RatFun weyl_apply(const WeylOp& p, const RatFun& f) {
  const auto& vars = p.context().vars;
  std::map<std::vector<int>, RatFun> derivatives;
  derivatives.emplace(std::vector<int>(vars.size(), 0), f);
  // d^b f, built from a lower derivative already in the cache
  auto derived = [&](const std::vector<int>& b, auto& self) -> const RatFun& {
    auto it = derivatives.find(b);
    if (it != derivatives.end()) return it->second;
    size_t i = 0;
    while (b[i] == 0) ++i;
    std::vector<int> lower = b;
    --lower[i];
    RatFun value = self(lower, self).derivative(vars[i]);
    return derivatives.emplace(b, std::move(value)).first->second;
  };
  RatFun out;
  for (const auto& [k, c] : p.terms()) {
    MPoly up(1), down(1);
    for (size_t i = 0; i < vars.size(); ++i) {
      if (k.x[i] > 0) up *= MPoly::variable(vars[i], k.x[i]);
      if (k.x[i] < 0) down *= MPoly::variable(vars[i], -k.x[i]);
    }
    out += c * RatFun::quotient(up, down) * derived(k.d, derived);
  }
  return out;
}

std::vector<WeylOp> ann_generators(const WeylContext& ctx, const MPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "annihilator of 1/0");
  std::vector<WeylOp> out;
  WeylOp mult = WeylOp::multiplication(ctx, p);
  for (size_t i = 0; i < ctx.vars.size(); ++i) {
    out.push_back(mult * WeylOp::derivative(ctx, static_cast<int>(i)) +
                  WeylOp::multiplication(ctx, p.derivative(ctx.vars[i])));
  }
  return out;
}

namespace {

std::string derivative_name(const std::string& var) {
  if (var.size() > 1 && var[0] == 'a' && std::all_of(var.begin() + 1, var.end(), ::isdigit)) return "d" + var.substr(1);
  return "d" + var;
}

}  // namespace

std::string to_string(const WeylOp& p) {
  const auto& table = *p.context().table;
  const auto& vars = p.context().vars;
  std::vector<std::string> parts;
  for (const auto& [k, c] : p.terms()) {
    std::vector<std::string> factors;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (k.x[i] != 0) factors.push_back(power(table.name(vars[i]), k.x[i]));
    }
    for (size_t i = 0; i < vars.size(); ++i) {
      if (k.d[i] != 0) factors.push_back(power(derivative_name(table.name(vars[i])), k.d[i]));
    }
    parts.push_back(render_term(c, factors, table));
  }
  return join_terms(parts);
}

ShiftOp::ShiftOp(ShiftContext ctx) : ctx_(std::move(ctx)) {}

ShiftOp ShiftOp::scalar(const ShiftContext& ctx, const RatFun& c) {
  ShiftOp s(ctx);
  s.add_term(std::vector<int>(ctx.eps.size(), 0), c);
  return s;
}

ShiftOp ShiftOp::sigma(const ShiftContext& ctx, int i, int power) {
  ShiftOp s(ctx);
  std::vector<int> a(ctx.eps.size(), 0);
  a.at(static_cast<size_t>(i)) = power;
  s.add_term(a, 1);
  return s;
}

ShiftOp ShiftOp::eps(const ShiftContext& ctx, int i) {
  return scalar(ctx, MPoly::variable(ctx.eps.at(static_cast<size_t>(i))));
}

bool ShiftOp::is_scalar() const {
  if (terms_.empty()) return true;
  const auto& a = terms_.begin()->first;
  return terms_.size() == 1 && std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

void ShiftOp::add_term(const std::vector<int>& shift, const RatFun& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(shift, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ShiftOp::check_same(const ShiftOp& o) const {
  if (!(ctx_ == o.ctx_)) throw Error(ErrorKind::VariableMismatch, "shift operators live in different contexts");
}

ShiftOp ShiftOp::operator-() const {
  ShiftOp r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

ShiftOp& ShiftOp::operator+=(const ShiftOp& o) {
  check_same(o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

ShiftOp& ShiftOp::operator-=(const ShiftOp& o) { return *this += -o; }

ShiftOp& ShiftOp::operator*=(const RatFun& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

// p(eps) sigma^a * q(eps) sigma^b = p(eps) q(eps + a) sigma^(a+b)
ShiftOp operator*(const ShiftOp& x, const ShiftOp& y) {
  x.check_same(y);
  ShiftOp r(x.ctx_);
  for (const auto& [a, p] : x.terms_) {
    for (const auto& [b, q] : y.terms_) {
      RatFun moved = q;
      std::vector<int> ab = a;
      for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) moved = moved.shift(x.ctx_.eps[i], Rational(a[i]));
        ab[i] += b[i];
      }
      r.add_term(ab, p * moved);
    }
  }
  return r;
}

ShiftOp ShiftOp::permute(std::span<const int> var_map, std::span<const int> shift_map) const {
  const auto& eps = ctx_.eps;
  if (shift_map.size() != eps.size() || static_cast<int>(var_map.size()) != ctx_.table->size()) {
    throw Error(ErrorKind::DimensionMismatch, "permutation size");
  }
  for (size_t k = 0; k < eps.size(); ++k) {
    if (var_map[static_cast<size_t>(eps[k])] != eps[static_cast<size_t>(shift_map[k])]) {
      throw Error(ErrorKind::VariableMismatch, "shift and eps permutations disagree");
    }
  }
  ShiftOp r(ctx_);
  for (const auto& [a, c] : terms_) {
    std::vector<int> b(a.size(), 0);
    for (size_t k = 0; k < a.size(); ++k) b[static_cast<size_t>(shift_map[k])] = a[k];
    r.add_term(b, c.permute(var_map));
  }
  return r;
}

std::string to_string(const ShiftOp& s) {
  const auto& table = *s.context().table;
  std::vector<std::string> parts;
  // larger shifts first
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
    std::vector<std::string> factors;
    for (size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] != 0) factors.push_back(power("s" + std::to_string(i + 1), it->first[i]));
    }
    parts.push_back(render_term(it->second, factors, table));
  }
  return join_terms(parts);
}

ShiftContext shift_context_for(const WeylContext& ctx) {
  std::vector<std::string> names = ctx.table->names();
  ShiftContext out;
  for (size_t i = 0; i < ctx.vars.size(); ++i) {
    std::string e = "e" + std::to_string(i + 1);
    auto found = ctx.table->find(e);
    if (found) {
      out.eps.push_back(*found);
    } else {
      out.eps.push_back(static_cast<int>(names.size()));
      names.push_back(e);
    }
  }
  out.table = sym::make_table(std::move(names));
  return out;
}

ShiftOp mellin(const WeylOp& p) {
  ShiftContext sctx = shift_context_for(p.context());
  ShiftOp r(sctx);
  for (const auto& [k, c] : p.terms()) {
    // x^a d^b = x^(a-b) theta(theta-1)...(theta-b+1); after theta -> -eps the
    // eps polynomial moves left of sigma^(a-b) by eps -> eps + (a-b)
    std::vector<int> shift(k.x.size());
    MPoly poly(1);
    for (size_t i = 0; i < k.x.size(); ++i) {
      shift[i] = k.x[i] - k.d[i];
      MPoly e = MPoly::variable(sctx.eps[i]) + MPoly(Rational(shift[i]));
      for (int j = 0; j < k.d[i]; ++j) poly *= -e - MPoly(j);
    }
    r.add_term(shift, c * RatFun(poly));
  }
  return r;
}

Residual shift_apply_numeric(const ShiftOp& s, const ShiftTable& table) {
  if (static_cast<int>(table.point.size()) != s.context().table->size()) {
    throw Error(ErrorKind::DimensionMismatch, "evaluation point needs one value per table variable");
  }
  Residual r;
  for (const auto& [a, c] : s.terms()) {
    auto it = table.values.find(a);
    if (it == table.values.end()) {
      std::string key;
      for (int v : a) key += (key.empty() ? "" : ",") + std::to_string(v);
      throw Error(ErrorKind::MissingTableEntry, "no value at offset (" + key + ")");
    }
    double coeff = c.evaluate(std::span<const double>(table.point));
    r.value += coeff * it->second.value;
    r.error += std::abs(coeff) * it->second.error;
  }
  return r;
}

}  // namespace cosmo::ops
