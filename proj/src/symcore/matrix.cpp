#include "cosmo/symcore/matrix.hpp"

#include <algorithm>

#include "cosmo/error.hpp"
#include "cosmo/symcore/gcd.hpp"

namespace cosmo::sym {

FracMatrix::FracMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
  data_.assign(static_cast<size_t>(rows * cols), RatFun());
}

FracMatrix FracMatrix::identity(int n) {
  FracMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FracMatrix FracMatrix::from_rows(const std::vector<std::vector<RatFun>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(ErrorKind::DimensionMismatch, "empty matrix");
  FracMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != m.cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    }
    for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  }
  return m;
}

FracMatrix FracMatrix::operator+(const FracMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
  FracMatrix m = *this;
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
  return m;
}

FracMatrix FracMatrix::operator-(const FracMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shape");
  FracMatrix m = *this;
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
  return m;
}

FracMatrix FracMatrix::operator*(const FracMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  FracMatrix m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const RatFun& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
      }
    }
  }
  return m;
}

FracMatrix FracMatrix::scaled(const RatFun& c) const {
  FracMatrix m = *this;
  for (auto& e : m.data_) e *= c;
  return m;
}

FracMatrix FracMatrix::transpose() const {
  FracMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

FracMatrix FracMatrix::derivative(int var) const {
  FracMatrix m = *this;
  for (auto& e : m.data_) e = e.derivative(var);
  return m;
}

FracMatrix FracMatrix::substitute(int var, const RatFun& value) const {
  FracMatrix m = *this;
  for (auto& e : m.data_) e = e.substitute(var, value);
  return m;
}

FracMatrix FracMatrix::permute(std::span<const int> map) const {
  FracMatrix m = *this;
  for (auto& e : m.data_) e = e.permute(map);
  return m;
}

bool FracMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const RatFun& e) { return e.is_zero(); });
}

namespace {

// Rows of [a | b] multiplied by their denominator lcm; returns the product of
// the multipliers.
MPoly clear_denominators(const FracMatrix& a, const FracMatrix* b, std::vector<std::vector<MPoly>>& p) {
  const int n = a.rows();
  const int w = b ? b->cols() : 0;
  p.assign(static_cast<size_t>(n), std::vector<MPoly>(static_cast<size_t>(a.cols() + w)));
  MPoly scale = 1;
  for (int i = 0; i < n; ++i) {
    auto entry = [&](int j) -> const RatFun& { return j < a.cols() ? a(i, j) : (*b)(i, j - a.cols()); };
    MPoly l = 1;
    for (int j = 0; j < a.cols() + w; ++j) {
      const MPoly& d = entry(j).den();
      if (!d.is_constant()) l = l * (d / gcd(l, d));
    }
    for (int j = 0; j < a.cols() + w; ++j) p[i][j] = entry(j).num() * (l / entry(j).den());
    scale *= l;
  }
  return scale;
}

// Fraction-free Bareiss elimination on the first n columns. Returns false if
// the leading block is singular; `negate` tracks row swaps.
bool bareiss(std::vector<std::vector<MPoly>>& p, int n, bool& negate) {
  const size_t width = p.empty() ? 0 : p.front().size();
  negate = false;
  MPoly prev = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (p[i][k].is_zero()) continue;
      if (piv < 0 || p[i][k].size() < p[piv][k].size()) piv = i;
    }
    if (piv < 0) return false;
    if (piv != k) {
      std::swap(p[piv], p[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (size_t j = static_cast<size_t>(k) + 1; j < width; ++j) p[i][j] = (p[k][k] * p[i][j] - p[i][k] * p[k][j]) / prev;
      p[i][k] = MPoly();
    }
    prev = p[k][k];
  }
  return true;
}

}  // namespace

RatFun frac_det(const FracMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::NotSquare, "determinant of a non-square matrix");
  const int n = input.rows();
  std::vector<std::vector<MPoly>> p;
  MPoly scale = clear_denominators(input, nullptr, p);
  bool negate = false;
  if (!bareiss(p, n, negate)) return RatFun();
  MPoly det = negate ? -p[n - 1][n - 1] : p[n - 1][n - 1];
  return RatFun::quotient(std::move(det), std::move(scale));
}

FracMatrix frac_solve(const FracMatrix& a, const FracMatrix& b) {
  if (!a.is_square()) throw Error(ErrorKind::NotSquare, "solve with a non-square matrix");
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side shape");
  const int n = a.rows();
  const int w = b.cols();
  std::vector<std::vector<MPoly>> p;
  clear_denominators(a, &b, p);
  bool negate = false;
  if (!bareiss(p, n, negate)) throw Error(ErrorKind::SingularGauge, "matrix is singular");
  FracMatrix x(n, w);
  for (int col = 0; col < w; ++col) {
    for (int k = n - 1; k >= 0; --k) {
      RatFun acc(p[k][n + col]);
      for (int j = k + 1; j < n; ++j) {
        if (!p[k][j].is_zero() && !x(j, col).is_zero()) acc -= RatFun(p[k][j]) * x(j, col);
      }
      x(k, col) = acc * RatFun::quotient(1, p[k][k]);
    }
  }
  return x;
}

FracMatrix frac_inverse(const FracMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "inverse of a non-square matrix");
  return frac_solve(m, FracMatrix::identity(m.rows()));
}

// ---------------------------------------------------------------- integers

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != m.cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    }
    for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  }
  return m;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "vector length");
  std::vector<Integer> out(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out[static_cast<size_t>(r)] += (*this)(r, c) * v[static_cast<size_t>(c)];
  }
  return out;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

// Unimodular row reduction of columns [0, width) into echelon form. Returns
// the number of pivot rows; rows past that are zero on those columns.
int integer_echelon(IntRows& rows, size_t width, std::vector<size_t>* pivots = nullptr) {
  size_t r = 0;
  for (size_t c = 0; c < width && r < rows.size(); ++c) {
    for (;;) {
      size_t best = rows.size();
      for (size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[r][c];  // truncating: leaves |remainder| < |pivot|
        for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (pivots) pivots->push_back(c);
      ++r;
    }
  }
  return static_cast<int>(r);
}

}  // namespace

std::vector<std::vector<Integer>> int_kernel_basis(const IntMatrix& a) {
  const size_t m = static_cast<size_t>(a.rows());
  const size_t n = static_cast<size_t>(a.cols());
  if (n == 0) return {};
  // Rows of [A^T | I]; rows whose A^T part reduces to zero span the kernel.
  IntRows work(n, std::vector<Integer>(m + n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t r = 0; r < m; ++r) work[i][r] = a(static_cast<int>(r), static_cast<int>(i));
    work[i][m + i] = 1;
  }
  int rank = integer_echelon(work, m);
  IntRows kernel;
  for (size_t i = static_cast<size_t>(rank); i < n; ++i) kernel.emplace_back(work[i].begin() + static_cast<long>(m), work[i].end());
  if (kernel.empty()) return kernel;

  std::vector<size_t> pivots;
  int k = integer_echelon(kernel, n, &pivots);
  kernel.resize(static_cast<size_t>(k));
  for (size_t i = 0; i < kernel.size(); ++i) {
    size_t c = pivots[i];
    if (kernel[i][c] < 0) {
      for (auto& x : kernel[i]) x = -x;
    }
    for (size_t above = 0; above < i; ++above) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), kernel[above][c].get_mpz_t(), kernel[i][c].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = 0; j < n; ++j) kernel[above][j] -= q * kernel[i][j];
    }
  }
  return kernel;
}

int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const size_t width = rows.front().size();
  for (size_t c = 0; c < width && static_cast<size_t>(rank) < rows.size(); ++c) {
    size_t r = static_cast<size_t>(rank);
    size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (size_t j = c; j < width; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace cosmo::sym
