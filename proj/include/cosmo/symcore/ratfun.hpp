#pragma once

#include <span>
#include <string>

#include "cosmo/symcore/mpoly.hpp"

namespace cosmo::sym {

/// Reduced quotient of two polynomials. The denominator is kept primitive with
/// integer coefficients and a positive leading coefficient, and shares no
/// factor with the numerator; all rational scaling lives in the numerator.
/// Two equal rational functions therefore have identical representations.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(MPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RatFun(const Rational& c) : num_(c), den_(1) {}

  /// Throws ZeroDenominator when den is zero.
  static RatFun quotient(MPoly num, MPoly den);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool depends_on(int var) const noexcept { return num_.depends_on(var) || den_.depends_on(var); }
  int used_vars() const noexcept { return std::max(num_.used_vars(), den_.used_vars()); }

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);

  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFun inverse() const;  // throws ZeroDenominator on zero
  RatFun pow(int k) const;
  RatFun derivative(int var) const;
  RatFun substitute(int var, const RatFun& value) const;
  RatFun shift(int var, const Rational& c) const;
  RatFun permute(std::span<const int> map) const;
  RatFun evaluate_var(int var, const Rational& value) const;  // throws ZeroDenominator

  Rational evaluate(std::span<const Rational> point) const;  // throws ZeroDenominator
  double evaluate(std::span<const double> point) const;

 private:
  RatFun(MPoly num, MPoly den, int /*trusted*/) : num_(std::move(num)), den_(std::move(den)) {}
  MPoly num_;
  MPoly den_;
};

inline RatFun ratfun_normalize(MPoly num, MPoly den) { return RatFun::quotient(std::move(num), std::move(den)); }

/// `num` alone for polynomials, else `(num)/((f1)*(f2)^2*...)` with the
/// denominator split into its linear factors.
std::string to_string(const RatFun& f, const VarTable& table);

}  // namespace cosmo::sym
