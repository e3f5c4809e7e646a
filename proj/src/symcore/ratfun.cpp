#include "cosmo/symcore/ratfun.hpp"

#include <sstream>

#include "cosmo/error.hpp"
#include "cosmo/symcore/gcd.hpp"

namespace cosmo::sym {

RatFun RatFun::quotient(MPoly num, MPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) return RatFun();
  if (!den.is_constant()) {
    MPoly g = gcd(num, den);
    if (!g.is_constant()) {
      num = num / g;
      den = den / g;
    }
  }
  Rational scale;
  den = den.primitive(scale);
  if (scale != 1) num *= Rational(1 / scale);
  return RatFun(std::move(num), std::move(den), 0);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, 0); }

RatFun& RatFun::operator+=(const RatFun& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.is_constant()) {
      num_ += o.num_;
      return *this;
    }
    return *this = quotient(num_ + o.num_, den_);
  }
  if (den_.is_constant()) return *this = RatFun(num_ * o.den_ + o.num_, o.den_, 0);
  if (o.den_.is_constant()) return *this = RatFun(num_ + o.num_ * den_, den_, 0);
  MPoly g = gcd(den_, o.den_);
  MPoly b1 = den_ / g;
  MPoly d1 = o.den_ / g;
  MPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = RatFun();
  MPoly h = g.is_constant() ? MPoly(1) : gcd(n, g);
  if (!h.is_constant()) {
    n = n / h;
    g = g / h;
  }
  MPoly d = b1 * d1 * g;
  Rational scale;
  d = d.primitive(scale);
  if (scale != 1) n *= Rational(1 / scale);
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
  if (is_zero() || o.is_zero()) return *this = RatFun();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  MPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    MPoly g = gcd(a, d);
    if (!g.is_constant()) {
      a = a / g;
      d = d / g;
    }
  }
  if (!b.is_constant()) {
    MPoly g = gcd(c, b);
    if (!g.is_constant()) {
      c = c / g;
      b = b / g;
    }
  }
  MPoly n = a * c;
  MPoly m = b * d;
  Rational scale;
  m = m.primitive(scale);
  if (scale != 1) n *= Rational(1 / scale);
  num_ = std::move(n);
  den_ = std::move(m);
  return *this;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroDenominator, "inverse of zero");
  Rational scale;
  MPoly d = num_.primitive(scale);
  return RatFun(den_ * Rational(1 / scale), std::move(d), 0);
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inverse(); }

RatFun RatFun::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  return RatFun(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), 0);
}

RatFun RatFun::derivative(int var) const {
  if (den_.is_constant()) return RatFun(num_.derivative(var), den_, 0);
  // (n/d)' = (n' d - n d') / d^2, with the common factor of d and d' removed.
  MPoly dd = den_.derivative(var);
  if (dd.is_zero()) return quotient(num_.derivative(var), den_);
  MPoly g = gcd(den_, dd);
  MPoly q = den_ / g;
  MPoly n = num_.derivative(var) * q - num_ * (dd / g);
  return quotient(std::move(n), q * den_);
}

RatFun RatFun::substitute(int var, const RatFun& value) const {
  if (!depends_on(var)) return *this;
  if (value.is_polynomial()) {
    MPoly v = value.num_ * Rational(1 / value.den_.constant_value());
    return quotient(num_.substitute(var, v), den_.substitute(var, v));
  }
  auto horner = [&](const MPoly& p) {
    RatFun acc;
    auto cs = p.coefficients_in(var);
    for (size_t k = cs.size(); k-- > 0;) acc = acc * value + RatFun(cs[k]);
    return acc;
  };
  return horner(num_) / horner(den_);
}

RatFun RatFun::shift(int var, const Rational& c) const {
  // a translation keeps the pair coprime and leaves the leading term alone;
  // only a fractional shift can break integrality of the denominator
  if (c.get_den() != 1) return quotient(num_.shift(var, c), den_.shift(var, c));
  return RatFun(num_.shift(var, c), den_.shift(var, c), 0);
}

RatFun RatFun::permute(std::span<const int> map) const { return quotient(num_.permute(map), den_.permute(map)); }

RatFun RatFun::evaluate_var(int var, const Rational& value) const {
  MPoly d = den_.evaluate_var(var, value);
  if (d.is_zero()) throw Error(ErrorKind::ZeroDenominator, "denominator vanishes at substituted value");
  return quotient(num_.evaluate_var(var, value), std::move(d));
}

Rational RatFun::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw Error(ErrorKind::ZeroDenominator, "denominator vanishes at point");
  return Rational(num_.evaluate(point) / d);
}

double RatFun::evaluate(std::span<const double> point) const { return num_.evaluate(point) / den_.evaluate(point); }

std::string to_string(const RatFun& f, const VarTable& table) {
  if (f.is_polynomial()) return to_string(f.num(), table);
  std::ostringstream out;
  const MPoly& n = f.num();
  bool bare = n.is_constant() && n.constant_value() > 0 && n.constant_value().get_den() == 1;
  if (bare) {
    out << to_string(n, table);
  } else {
    out << '(' << to_string(n, table) << ')';
  }
  out << '/';
  Factorization fz = factor_linear(f.den());
  std::vector<std::string> parts;
  for (const auto& [lin, m] : fz.linear) {
    std::string s = "(" + to_string(lin, table) + ")";
    if (m > 1) s += "^" + std::to_string(m);
    parts.push_back(std::move(s));
  }
  if (!fz.rest.is_constant()) parts.push_back("(" + to_string(fz.rest, table) + ")");
  if (fz.unit != 1) parts.insert(parts.begin(), fz.unit.get_str());
  if (parts.size() == 1) {
    out << parts.front();
  } else {
    out << '(';
    for (size_t i = 0; i < parts.size(); ++i) out << (i ? "*" : "") << parts[i];
    out << ')';
  }
  return out.str();
}

}  // namespace cosmo::sym
