#pragma once

#include <vector>

#include "cosmo/symcore/ratfun.hpp"

namespace cosmo::sym {

/// Dense row-major matrix over the rational-function field.
class FracMatrix {
 public:
  FracMatrix() = default;
  FracMatrix(int rows, int cols);  // zero matrix; throws DimensionMismatch on non-positive sizes
  static FracMatrix identity(int n);
  static FracMatrix from_rows(const std::vector<std::vector<RatFun>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  RatFun& operator()(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  const RatFun& operator()(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

  FracMatrix operator+(const FracMatrix& o) const;
  FracMatrix operator-(const FracMatrix& o) const;
  FracMatrix operator*(const FracMatrix& o) const;
  FracMatrix scaled(const RatFun& c) const;
  friend bool operator==(const FracMatrix& a, const FracMatrix& b) = default;

  FracMatrix transpose() const;
  FracMatrix derivative(int var) const;
  FracMatrix substitute(int var, const RatFun& value) const;
  FracMatrix permute(std::span<const int> map) const;
  bool is_zero() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<RatFun> data_;
};

/// Exact determinant; throws NotSquare.
RatFun frac_det(const FracMatrix& m);
/// Exact inverse; throws NotSquare, or SingularGauge when the determinant vanishes.
FracMatrix frac_inverse(const FracMatrix& m);
/// Solves m * x = b for square invertible m.
FracMatrix frac_solve(const FracMatrix& m, const FracMatrix& b);

/// Dense integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Integer& operator()(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  const Integer& operator()(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }
  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

/// Lattice basis of {v in Z^cols : A v = 0}, returned in Hermite normal form
/// (echelon, positive pivots, entries above each pivot reduced modulo it).
std::vector<std::vector<Integer>> int_kernel_basis(const IntMatrix& a);

/// Row rank of a matrix of rationals.
int rational_rank(std::vector<std::vector<Rational>> rows);

}  // namespace cosmo::sym
