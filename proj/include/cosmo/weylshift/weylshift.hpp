#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cosmo/symcore/ratfun.hpp"

namespace cosmo::ops {

using sym::MPoly;
using sym::RatFun;
using sym::Rational;
using sym::VarTablePtr;

/// Variable table plus the variables that carry derivatives. Every other
/// table variable is a parameter living in the coefficients.
struct WeylContext {
  VarTablePtr table;
  std::vector<int> vars;  // table indices of the differential variables

  static WeylContext make(VarTablePtr table, const std::vector<std::string>& names);
  int slot(int var) const;  // position in vars, or -1
  bool operator==(const WeylContext& o) const { return *table == *o.table && vars == o.vars; }
};

/// Normal-ordered differential operator sum c * x^a * d^b, variables left of
/// derivatives. Negative powers of x are allowed only in Laurent operators.
class WeylOp {
 public:
  struct Key {
    std::vector<int> x;  // powers of the differential variables
    std::vector<int> d;  // derivative orders
    // derivative-heavy terms first, then variable-heavy
    friend bool operator<(const Key& a, const Key& b);
    friend bool operator==(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, RatFun>;

  explicit WeylOp(WeylContext ctx, bool laurent = false);

  /// Throws VariableMismatch if c depends on a differential variable.
  static WeylOp scalar(const WeylContext& ctx, const RatFun& c);
  static WeylOp variable(const WeylContext& ctx, int slot, int power = 1);
  static WeylOp derivative(const WeylContext& ctx, int slot, int order = 1);
  /// A polynomial in the differential variables with parameter coefficients,
  /// read as a multiplication operator. The denominator must be free of them.
  static WeylOp multiplication(const WeylContext& ctx, const RatFun& f);

  const WeylContext& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  bool laurent() const noexcept { return laurent_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Only an identity term (or zero).
  bool is_scalar() const;
  int order() const;  // largest total derivative order

  WeylOp operator-() const;
  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  WeylOp& operator*=(const RatFun& c);
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator*(WeylOp a, const RatFun& c) { return a *= c; }
  friend WeylOp operator*(const RatFun& c, WeylOp a) { return a *= c; }
  friend bool operator==(const WeylOp& a, const WeylOp& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  void add_term(const Key& k, const RatFun& c);

 private:
  void check_same(const WeylOp& o) const;
  WeylContext ctx_;
  bool laurent_ = false;
  Terms terms_;
};

/// Throws VariableMismatch on differing contexts.
WeylOp weyl_mul(const WeylOp& p, const WeylOp& q);
/// P applied to f, with f a rational function over the same table.
RatFun weyl_apply(const WeylOp& p, const RatFun& f);
/// p * d_i + dp/dx_i for every differential variable; each annihilates 1/p.
/// Throws ZeroPolynomial.
std::vector<WeylOp> ann_generators(const WeylContext& ctx, const MPoly& p);

/// "(X1+Y)*a1^2*d1 + ..." in the operator grammar.
std::string to_string(const WeylOp& p);

/// Variable table plus the shift variables eps_1..eps_n. sigma_i shifts
/// eps_i by one.
struct ShiftContext {
  VarTablePtr table;
  std::vector<int> eps;  // table indices

  int size() const noexcept { return static_cast<int>(eps.size()); }
  bool operator==(const ShiftContext& o) const { return *table == *o.table && eps == o.eps; }
};

/// Normal-ordered shift operator sum p_a(eps) sigma^a with eps to the left.
class ShiftOp {
 public:
  using Terms = std::map<std::vector<int>, RatFun>;

  explicit ShiftOp(ShiftContext ctx);

  static ShiftOp scalar(const ShiftContext& ctx, const RatFun& c);
  static ShiftOp sigma(const ShiftContext& ctx, int i, int power = 1);  // i is 0-based
  static ShiftOp eps(const ShiftContext& ctx, int i);

  const ShiftContext& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_scalar() const;

  ShiftOp operator-() const;
  ShiftOp& operator+=(const ShiftOp& o);
  ShiftOp& operator-=(const ShiftOp& o);
  ShiftOp& operator*=(const RatFun& c);
  friend ShiftOp operator+(ShiftOp a, const ShiftOp& b) { return a += b; }
  friend ShiftOp operator-(ShiftOp a, const ShiftOp& b) { return a -= b; }
  friend ShiftOp operator*(const ShiftOp& a, const ShiftOp& b);
  friend ShiftOp operator*(ShiftOp a, const RatFun& c) { return a *= c; }
  friend ShiftOp operator*(const RatFun& c, ShiftOp a) { return a *= c; }
  friend bool operator==(const ShiftOp& a, const ShiftOp& b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

  /// Rename table variables (var i becomes var_map[i]) and shift indices
  /// (sigma_k becomes sigma_{shift_map[k]}); eps must map consistently.
  ShiftOp permute(std::span<const int> var_map, std::span<const int> shift_map) const;

  void add_term(const std::vector<int>& shift, const RatFun& c);

 private:
  void check_same(const ShiftOp& o) const;
  ShiftContext ctx_;
  Terms terms_;
};

std::string to_string(const ShiftOp& s);

/// Shift context matching a Weyl context: its table plus e1..en (reused when
/// already present), one per differential variable in order.
ShiftContext shift_context_for(const WeylContext& ctx);

/// Algebraic Mellin transform: x^a d^b -> x^(a-b) prod theta(theta-1)...,
/// then x -> sigma, theta -> -eps, normal-ordered.
ShiftOp mellin(const WeylOp& p);

/// Values of a function of eps on a lattice around a base point.
struct ShiftTable {
  std::vector<double> point;  // one value per table variable; eps slots hold the base point
  struct Entry {
    double value = 0.0;
    double error = 0.0;
  };
  std::map<std::vector<int>, Entry> values;  // keyed by integer offset from the base
};

struct Residual {
  double value = 0.0;
  double error = 0.0;  // sum of |coefficient| * entry error
};

/// (S F)(base) = sum_a p_a(base) F(base + a). Throws MissingTableEntry.
Residual shift_apply_numeric(const ShiftOp& s, const ShiftTable& table);

}  // namespace cosmo::ops
