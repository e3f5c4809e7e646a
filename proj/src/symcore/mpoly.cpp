#include "cosmo/symcore/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "cosmo/error.hpp"

namespace cosmo::sym {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > static_cast<size_t>(kMaxVars)) {
    throw Error(ErrorKind::Overflow, "too many variables (" + std::to_string(names_.size()) + ")");
  }
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::VariableMismatch, "duplicate variable name " + names_[i]);
    }
  }
}

std::optional<int> VarTable::find(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int VarTable::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorKind::UnknownVariable, name);
  return *i;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int index, int power) {
  if (index < 0 || index >= kMaxVars) throw Error(ErrorKind::Overflow, "variable index out of range");
  if (power < 0 || power > 255) throw Error(ErrorKind::Overflow, "exponent out of range");
  Monomial m;
  m.exp[static_cast<size_t>(index)] = static_cast<std::uint8_t>(power);
  m.degree = static_cast<std::uint16_t>(power);
  return m;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree > other.degree) return false;
  for (int i = 0; i < kMaxVars; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exp[i] + other.exp[i];
    if (e > 255) throw Error(ErrorKind::Overflow, "exponent overflow");
    r.exp[i] = static_cast<std::uint8_t>(e);
  }
  r.degree = static_cast<std::uint16_t>(degree + other.degree);
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint8_t>(exp[i] - other.exp[i]);
  r.degree = static_cast<std::uint16_t>(degree - other.degree);
  return r;
}

Monomial Monomial::gcd(const Monomial& other) const noexcept {
  Monomial r;
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.exp[i] = std::min(exp[i], other.exp[i]);
    d += r.exp[i];
  }
  r.degree = static_cast<std::uint16_t>(d);
  return r;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
}

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

MPoly MPoly::variable(int index, int power) { return monomial(Monomial::var(index, power), 1); }

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
  MPoly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  MPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void MPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

Rational MPoly::constant_value() const {
  if (terms_.empty() || !terms_.back().mono.is_one()) return 0;
  return terms_.back().coeff;
}

int MPoly::degree() const noexcept { return terms_.empty() ? -1 : terms_.front().mono.degree; }

int MPoly::degree(int var) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool MPoly::depends_on(int var) const noexcept {
  for (const auto& t : terms_) {
    if (t.mono[var] != 0) return true;
  }
  return false;
}

int MPoly::used_vars() const noexcept {
  int n = 0;
  for (const auto& t : terms_) {
    for (int i = kMaxVars - 1; i >= n; --i) {
      if (t.mono.exp[i] != 0) {
        n = i + 1;
        break;
      }
    }
  }
  return n;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<MPoly::Term> merge_add(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b, bool negate_b) {
  std::vector<MPoly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_add(terms_, other.terms_, false);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_add(terms_, other.terms_, true);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  std::map<Monomial, Rational, std::greater<>> acc;
  Rational tmp;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      tmp = s.coeff * t.coeff;
      auto [it, fresh] = acc.try_emplace(s.mono * t.mono, tmp);
      if (!fresh) it->second += tmp;
    }
  }
  MPoly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  }
  return r;
}

MPoly& MPoly::operator*=(const MPoly& other) {
  *this = *this * other;
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

bool operator<(const MPoly& a, const MPoly& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    const auto& s = a.terms_[i];
    const auto& t = b.terms_[i];
    if (!(s.mono == t.mono)) return s.mono < t.mono;
    if (s.coeff != t.coeff) return s.coeff < t.coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

MPoly MPoly::pow(unsigned k) const {
  MPoly result(1);
  MPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rational& c) const {
  MPoly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;  // multiplication by a monomial preserves the order
}

MPoly MPoly::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.exp[static_cast<size_t>(var)] = static_cast<std::uint8_t>(e - 1);
    m.degree = static_cast<std::uint16_t>(m.degree - 1);
    out.push_back({m, t.coeff * e});
  }
  return from_terms(std::move(out));
}

MPoly MPoly::substitute(int var, const MPoly& value) const {
  auto coeffs = coefficients_in(var);
  MPoly result;
  for (size_t k = coeffs.size(); k-- > 0;) {
    result = result * value + coeffs[k];
  }
  return result;
}

MPoly MPoly::shift(int var, const Rational& c) const {
  if (c == 0) return *this;
  return substitute(var, variable(var) + MPoly(c));
}

MPoly MPoly::permute(std::span<const int> map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    m.degree = t.mono.degree;
    for (size_t i = 0; i < map.size(); ++i) {
      if (t.mono.exp[i] != 0) m.exp[static_cast<size_t>(map[i])] = t.mono.exp[i];
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(out));
}

Rational MPoly::evaluate(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      for (int k = 0; k < t.mono[i]; ++k) v *= point[static_cast<size_t>(i)];
    }
    sum += v;
  }
  return sum;
}

double MPoly::evaluate(std::span<const double> point) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (int i = 0; i < kMaxVars; ++i) {
      for (int k = 0; k < t.mono[i]; ++k) v *= point[static_cast<size_t>(i)];
    }
    sum += v;
  }
  return sum;
}

MPoly MPoly::evaluate_var(int var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    int e = t.mono[var];
    Rational c = t.coeff;
    if (e > 0) {
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), static_cast<unsigned long>(e));
      c *= p;
    }
    Monomial m = t.mono;
    m.exp[static_cast<size_t>(var)] = 0;
    m.degree = static_cast<std::uint16_t>(m.degree - e);
    out.push_back({m, c});
  }
  return from_terms(std::move(out));
}

std::vector<MPoly> MPoly::coefficients_in(int var) const {
  std::vector<MPoly> out(static_cast<size_t>(std::max(degree(var), 0) + 1));
  std::vector<std::vector<Term>> parts(out.size());
  for (const auto& t : terms_) {
    int e = t.mono[var];
    Monomial m = t.mono;
    m.exp[static_cast<size_t>(var)] = 0;
    m.degree = static_cast<std::uint16_t>(m.degree - e);
    parts[static_cast<size_t>(e)].push_back({m, t.coeff});
  }
  for (size_t k = 0; k < out.size(); ++k) out[k] = from_terms(std::move(parts[k]));
  return out;
}

MPoly MPoly::from_coefficients(int var, const std::vector<MPoly>& coeffs) {
  std::vector<Term> out;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    Monomial v = Monomial::var(var, static_cast<int>(k));
    for (const auto& t : coeffs[k].terms_) out.push_back({t.mono * v, t.coeff});
  }
  return from_terms(std::move(out));
}

Rational MPoly::content() const {
  if (terms_.empty()) return 0;
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return c;
}

MPoly MPoly::primitive(Rational& scale) const {
  if (terms_.empty()) {
    scale = 0;
    return MPoly();
  }
  scale = content();
  if (terms_.front().coeff < 0) scale = -scale;
  if (scale == 1) return *this;
  MPoly r = *this;
  Rational inv = 1 / scale;
  for (auto& t : r.terms_) t.coeff *= inv;
  return r;
}

MPoly MPoly::primitive() const {
  Rational s;
  return primitive(s);
}

Monomial MPoly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) g = g.gcd(t.mono);
  return g;
}

MPoly MPoly::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  MPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono / m, t.coeff});
  return r;
}

bool MPoly::divide_exact(const MPoly& divisor, MPoly& quotient) const {
  if (divisor.is_zero()) throw Error(ErrorKind::ZeroDenominator, "polynomial division by zero");
  quotient = MPoly();
  if (is_zero()) return true;
  if (divisor.terms_.size() == 1) {
    const auto& d = divisor.terms_[0];
    for (const auto& t : terms_) {
      if (!d.mono.divides(t.mono)) return false;
    }
    Rational inv = 1 / d.coeff;
    quotient.terms_.reserve(terms_.size());
    for (const auto& t : terms_) quotient.terms_.push_back({t.mono / d.mono, t.coeff * inv});
    return true;
  }
  if (divisor.degree() > degree()) return false;
  const auto& lead = divisor.terms_.front();
  // cheap per-variable degree test
  for (int v = 0; v < kMaxVars; ++v) {
    if (divisor.degree(v) > degree(v)) return false;
  }
  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
  Rational inv = 1 / lead.coeff;
  std::vector<Term> q;
  Rational tmp;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) return false;
    Monomial m = top->first / lead.mono;
    Rational c = top->second * inv;
    rem.erase(top);
    for (size_t i = 1; i < divisor.terms_.size(); ++i) {
      const auto& d = divisor.terms_[i];
      tmp = d.coeff * c;
      auto [it, fresh] = rem.try_emplace(d.mono * m, -tmp);
      if (!fresh) {
        it->second -= tmp;
        if (it->second == 0) rem.erase(it);
      }
    }
    q.push_back({m, std::move(c)});
  }
  quotient.terms_ = std::move(q);
  return true;
}

MPoly MPoly::operator/(const MPoly& divisor) const {
  MPoly q;
  if (!divide_exact(divisor, q)) throw Error(ErrorKind::NotSolvable, "inexact polynomial division");
  return q;
}

// ---------------------------------------------------------------- rendering

std::string to_string(const Rational& q) {
  return q.get_str();
}

Rational parse_rational(const std::string& text) {
  auto fail = [&](size_t pos) -> Rational {
    throw ParseError("malformed number '" + text + "'", 1, static_cast<int>(pos) + 1);
  };
  size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start) return fail(i);
  Rational value(Integer(text.substr(start, i - start)), 1);
  if (i < text.size() && text[i] == '.') {
    size_t frac = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == frac) return fail(i);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, i - frac);
    value += Rational(Integer(text.substr(frac, i - frac)), scale);
  } else if (i < text.size() && text[i] == '/') {
    size_t den = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den) return fail(i);
    Integer d(text.substr(den, i - den));
    if (d == 0) throw Error(ErrorKind::ZeroDenominator, "zero denominator in '" + text + "'");
    value /= Rational(d);
  }
  if (i != text.size()) return fail(i);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const MPoly& p, const VarTable& table) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? '-' : '+');
    }
    first = false;
    bool need_star = false;
    if (t.mono.is_one() || c != 1) {
      out << c.get_str();
      need_star = true;
    }
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (i >= table.size()) throw Error(ErrorKind::VariableMismatch, "polynomial uses a variable outside its table");
      if (need_star) out << '*';
      out << table.name(i);
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace cosmo::sym
