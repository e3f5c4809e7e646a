#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "cosmo/symcore/vartable.hpp"

namespace cosmo::sym {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr int kMaxVars = 32;

/// Exponent vector with a cached total degree. Ordering is graded
/// lexicographic with variable 0 the most significant.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};
  std::uint16_t degree = 0;

  static Monomial var(int index, int power = 1);

  int operator[](int i) const { return exp[static_cast<size_t>(i)]; }
  bool is_one() const noexcept { return degree == 0; }
  bool divides(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;  // requires divides()
  Monomial gcd(const Monomial& other) const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree == b.degree && a.exp == b.exp;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree != b.degree) return a.degree <=> b.degree;
    int c = std::memcmp(a.exp.data(), b.exp.data(), kMaxVars);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted in
/// descending graded-lex order with no zero coefficients; the zero polynomial
/// has no terms.
class MPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  MPoly() = default;
  MPoly(long c);  // NOLINT(google-explicit-constructor): integer literals read naturally in formulas
  explicit MPoly(const Rational& c);

  static MPoly variable(int index, int power = 1);
  static MPoly monomial(const Monomial& m, const Rational& c);
  static MPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;  // value if is_constant(), else the constant term
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  int degree() const noexcept;
  int degree(int var) const noexcept;
  bool depends_on(int var) const noexcept;
  /// Highest variable index used plus one.
  int used_vars() const noexcept;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const MPoly& other);
  MPoly& operator*=(const Rational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator*(MPoly a, long c) { return a *= Rational(c); }
  friend MPoly operator*(long c, MPoly a) { return a *= Rational(c); }

  friend bool operator==(const MPoly& a, const MPoly& b);
  /// Structural total order (graded-lex on terms, then coefficients); used for
  /// deterministic sorting of factor sets.
  friend bool operator<(const MPoly& a, const MPoly& b);

  MPoly pow(unsigned k) const;
  MPoly mul_monomial(const Monomial& m, const Rational& c) const;
  MPoly derivative(int var) const;
  MPoly substitute(int var, const MPoly& value) const;
  /// x_var -> x_var + c
  MPoly shift(int var, const Rational& c) const;
  /// Rename variables: variable i becomes map[i]; map entries must be distinct.
  MPoly permute(std::span<const int> map) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;
  /// Substitute a number for one variable.
  MPoly evaluate_var(int var, const Rational& value) const;

  /// Coefficients with respect to one variable: result[k] multiplies var^k.
  std::vector<MPoly> coefficients_in(int var) const;
  static MPoly from_coefficients(int var, const std::vector<MPoly>& coeffs);

  /// Positive rational c such that this / c has coprime integer coefficients.
  Rational content() const;
  /// Integer-coefficient primitive associate with positive leading coefficient.
  MPoly primitive() const;
  /// Same as primitive() but also returns the scale: *this == scale * primitive.
  MPoly primitive(Rational& scale) const;
  Monomial monomial_content() const;
  MPoly divide_monomial(const Monomial& m) const;

  /// Exact division; returns false if divisor does not divide *this.
  bool divide_exact(const MPoly& divisor, MPoly& quotient) const;
  MPoly operator/(const MPoly& divisor) const;  // throws if inexact

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

std::string to_string(const MPoly& p, const VarTable& table);
std::string to_string(const Rational& q);
/// "3", "-3/4" or "1.25"; throws ParseError.
Rational parse_rational(const std::string& text);

}  // namespace cosmo::sym
