#pragma once

#include <vector>

#include "cosmo/symcore/ratfun.hpp"

namespace cosmo::wave::detail {

// Floating-point copy of a polynomial in its first n variables, for inner
// loops of the integrators.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const sym::MPoly& p, int n) : n_(n) {
    for (const auto& t : p.terms()) {
      coeffs_.push_back(t.coeff.get_d());
      for (int i = 0; i < n; ++i) {
        exps_.push_back(t.mono[i]);
        max_exp_ = std::max(max_exp_, static_cast<int>(t.mono[i]));
      }
    }
  }

  double operator()(const double* x) const {
    // powers[i * (max+1) + k] = x_i^k
    const int stride = max_exp_ + 1;
    double powers[64 * 8];
    std::vector<double> heap;
    double* pw = powers;
    if (n_ * stride > 64 * 8) {
      heap.resize(static_cast<size_t>(n_ * stride));
      pw = heap.data();
    }
    for (int i = 0; i < n_; ++i) {
      pw[i * stride] = 1.0;
      for (int k = 1; k < stride; ++k) pw[i * stride + k] = pw[i * stride + k - 1] * x[i];
    }
    double sum = 0.0;
    for (size_t t = 0; t < coeffs_.size(); ++t) {
      double term = coeffs_[t];
      const int* e = &exps_[t * static_cast<size_t>(n_)];
      for (int i = 0; i < n_; ++i) term *= pw[i * stride + e[i]];
      sum += term;
    }
    return sum;
  }

 private:
  int n_ = 0;
  int max_exp_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exps_;
};

class CompiledRatFun {
 public:
  CompiledRatFun(const sym::RatFun& f, int n) : num_(f.num(), n), den_(f.den(), n) {}
  double operator()(const double* x) const { return num_(x) / den_(x); }

 private:
  CompiledPoly num_;
  CompiledPoly den_;
};

}  // namespace cosmo::wave::detail
