#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cfloat>
#include <cmath>
#include <complex>

#include "compiled.hpp"
#include "sampling.hpp"

namespace cosmo::wave {

namespace {

using boost::math::quadrature::tanh_sinh;

// Largest total degree in the variables of `mask` over the terms of p.
int subset_degree(const sym::MPoly& p, std::uint32_t mask, int n) {
  int best = 0;
  for (const auto& t : p.terms()) {
    int d = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) d += t.mono[i];
    }
    best = std::max(best, d);
  }
  return best;
}

void check_parameters(const RatFun& f, int n, const std::vector<double>& eps, double lower) {
  if (static_cast<int>(eps.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "need one exponent per integration variable");
  }
  if (n > 20) throw Error(ErrorKind::DimensionMismatch, "too many integration variables");
  for (int i = 0; i < n; ++i) {
    double s = eps[static_cast<size_t>(i)];
    if (!std::isfinite(s) || s <= lower) {
      throw Error(ErrorKind::DivergentParameters,
                  "exponent " + std::to_string(i + 1) + " must exceed " + std::to_string(static_cast<int>(lower)));
    }
    if (std::abs(s + 1.0) < 1e-9) throw Error(ErrorKind::DivergentParameters, "exponent -1 is a pole");
  }
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    double weight = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) weight += eps[static_cast<size_t>(i)] + 1.0;
    }
    int drop = subset_degree(f.den(), mask, n) - subset_degree(f.num(), mask, n);
    if (weight >= drop) {
      throw Error(ErrorKind::DivergentParameters, "integral diverges at infinity in a subset of the variables");
    }
  }
}

struct Partial {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Nested tanh-sinh quadrature, one level per integration variable.
class TensorQuadrature {
 public:
  TensorQuadrature(const RatFun& f, int n, const std::vector<double>& eps, double tol)
      : f_(f, n),
        n_(n),
        eps_(eps),
        tol_(tol),
        alpha_(static_cast<size_t>(n), 0.0) {
    // inner levels only need to resolve points that matter to the outer sum;
    // capping their refinement keeps far-out points from dominating the cost,
    // and whatever they leave unresolved is carried in their error
    integrators_.emplace_back(15);
    for (int i = 1; i < n; ++i) integrators_.emplace_back(9);
  }

  Estimate run() {
    Partial p = level(0);
    Estimate e;
    e.value = p.value;
    e.error = p.error + 64.0 * DBL_EPSILON * p.l1;
    e.samples = evaluations_;
    return e;
  }

 private:
  Partial inner(int d) {
    if (d == n_) {
      ++evaluations_;
      double v = f_(alpha_.data());
      return {v, 0.0, std::abs(v)};
    }
    return level(d);
  }

  // int_0^inf alpha^s I(alpha) d alpha with alpha = u/(1-u), u = (1+t)/2, on
  // t in (-1,1). The integrator hands over the distance to the nearest end of
  // (-1,1), so both 1+t and 1-t keep full precision near the ends. The
  // imaginary part carries the nested error estimate, so it is integrated
  // with the same weights as the value.
  Partial level(int d) {
    const double s = eps_[static_cast<size_t>(d)];
    const auto slot = static_cast<size_t>(d);
    auto mapped = [&](double t, double tc) -> std::complex<double> {
      double plus = t < 0 ? -tc : 1.0 + t;
      double minus = t > 0 ? tc : 1.0 - t;
      double a = plus / minus;
      double factor = std::pow(a, s) * 2.0 / (minus * minus);
      if (!std::isfinite(factor) || !std::isfinite(a)) return 0.0;
      alpha_[slot] = a;
      Partial p = inner(d + 1);
      std::complex<double> r(factor * p.value, factor * p.error);
      return std::isfinite(r.real()) && std::isfinite(r.imag()) ? r : 0.0;
    };
    Partial out;
    std::size_t refinements = 0;
    std::complex<double> v = integrators_[slot].integrate(mapped, tol_, &out.error, &out.l1, &refinements);
    alpha_[slot] = 0.0;
    out.value = v.real();
    out.error += std::abs(v.imag());
    return out;
  }

  detail::CompiledRatFun f_;
  int n_;
  std::vector<double> eps_;
  double tol_;
  std::vector<double> alpha_;
  long evaluations_ = 0;
  std::vector<tanh_sinh<double>> integrators_;  // one per level, so nested calls never share tables
};

// alpha_i = w^(1/(s_i+1)) with w = v/(1-v) turns each factor alpha^s d alpha
// into dv / ((s+1)(1-v)^2) on the unit cube.
Estimate monte_carlo(const RatFun& f, int n, const std::vector<double>& eps, const SamplingOptions& opt) {
  detail::CompiledRatFun compiled(f, n);
  return detail::chunked_monte_carlo(opt, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double alpha[graph::kMaxGraphVertices];
    double weight = 1.0;
    for (int i = 0; i < n; ++i) {
      double s1 = eps[static_cast<size_t>(i)] + 1.0;
      double v = uniform(rng);
      double w = v / (1.0 - v);
      alpha[i] = std::pow(w, 1.0 / s1);
      weight /= s1 * (1.0 - v) * (1.0 - v);
    }
    double r = weight * compiled(alpha);
    return std::isfinite(r) ? r : 0.0;
  });
}

RatFun integrand_at(const KinGraph& g, const KinPoint& p) {
  KinPoint checked = KinPoint::make(g, p.values);
  auto known = closed_form(g);
  RatFun f = known ? known->value : psi_flat_conjectured(g);
  for (int e = 0; e < g.edge_count(); ++e) {
    f = f.evaluate_var(g.y_var(e), checked.values[static_cast<size_t>(g.y_var(e))]);
  }
  for (int v = 1; v <= g.n(); ++v) f = f.shift(g.x_var(v), checked.values[static_cast<size_t>(g.x_var(v))]);
  return f;
}

Estimate integrate_checked(const RatFun& f, int n, const std::vector<double>& eps, const MellinOptions& opt) {
  bool tensor = opt.method == QuadratureMethod::TensorProduct || (opt.method == QuadratureMethod::Automatic && n <= 3);
  if (tensor) return TensorQuadrature(f, n, eps, opt.tolerance).run();
  return monte_carlo(f, n, eps, opt.sampling);
}

}  // namespace

Estimate mellin_numeric(const RatFun& f, int n, const std::vector<double>& eps, const MellinOptions& opt) {
  check_parameters(f, n, eps, -1.0);
  return integrate_checked(f, n, eps, opt);
}

Estimate mellin_continued(const RatFun& f, int n, const std::vector<double>& eps, const MellinOptions& opt) {
  check_parameters(f, n, eps, -2.0);
  // int a^s h da = -1/(s+1) int a^(s+1) h'(a) da, and the right side converges for s > -2
  RatFun g = f;
  std::vector<double> raised = eps;
  double factor = 1.0;
  for (int i = 0; i < n; ++i) {
    double& s = raised[static_cast<size_t>(i)];
    if (s > -1.0) continue;
    g = g.derivative(i);
    factor *= -1.0 / (s + 1.0);
    s += 1.0;
  }
  Estimate e = integrate_checked(g, n, raised, opt);
  e.value *= factor;
  e.error *= std::abs(factor);
  return e;
}

Estimate psi_eps_numeric(const KinGraph& g, const KinPoint& p, const std::vector<double>& eps,
                         const MellinOptions& opt) {
  return mellin_numeric(integrand_at(g, p), g.n(), eps, opt);
}

Estimate psi_eps_continued(const KinGraph& g, const KinPoint& p, const std::vector<double>& eps,
                           const MellinOptions& opt) {
  return mellin_continued(integrand_at(g, p), g.n(), eps, opt);
}

}  // namespace cosmo::wave
