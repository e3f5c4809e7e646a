#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosmo/graphkit/orientation.hpp"
#include "cosmo/symcore/ratfun.hpp"

namespace cosmo::wave {

using graph::KinGraph;
using sym::RatFun;
using sym::Rational;

/// One rational value per kinematic variable, in the graph's table order
/// (X1..Xn, then the edge energies).
struct KinPoint {
  std::vector<Rational> values;

  /// Throws NonPositivePoint unless every value is positive and no linear
  /// form of the graph vanishes; DimensionMismatch on a wrong length.
  static KinPoint make(const KinGraph& g, std::vector<Rational> values);
  /// "X1=2,X2=2,Y=1"; every variable must be assigned exactly once.
  static KinPoint parse(const KinGraph& g, const std::string& text);

  std::vector<double> as_doubles() const;
};

/// Random point with X_v in [1,5] and Y_e in [1/4,2] (quarter steps).
KinPoint random_point(const KinGraph& g, std::uint64_t seed);

/// Known wavefunctions, recognised from the shape of the graph: the two-site
/// exchange, the three-site chain 1-2-3 and the two-vertex bubble.
struct ClosedForm {
  std::string name;
  RatFun value;
};
std::optional<ClosedForm> closed_form(const KinGraph& g);

/// Sum of all decomposition terms, normalized.
RatFun psi_flat_conjectured(const KinGraph& g);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // standard error (sampling) or quadrature error estimate
  long samples = 0;    // integrand evaluations
};

struct SamplingOptions {
  long samples = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: worker_count()
};

/// Monte Carlo estimate of the time integral
///   int_{[0,inf)^n} prod_v e^{-X_v t_v} prod_{e=ij} (e^{-Y_e|t_i-t_j|} - e^{-Y_e(t_i+t_j)}) dt
/// sampling t_v from X_v e^{-X_v t_v}. Sampling is split into a fixed number
/// of independently seeded chunks, so the result does not depend on threads.
Estimate psi_flat_numeric(const KinGraph& g, const KinPoint& p, const SamplingOptions& opt = {});

struct TermReport {
  int sign = 1;
  std::string orientation;
  std::vector<std::string> forms;
};

struct PointReport {
  std::vector<std::string> point;  // "X1=2" style
  double conjectured = 0.0;
  Estimate numeric;
  bool pass = false;
};

struct VerifyReport {
  std::string graph;
  std::string mode;  // "symbolic" or "numeric"
  std::vector<TermReport> terms;
  std::string lhs;  // the summed decomposition
  std::string rhs;  // closed form, or a description of the numeric check
  std::vector<PointReport> points;
  bool pass = false;

  std::string summary() const;  // "PASS (symbolic, 7 terms)"
  std::string to_text() const;
  std::string to_json() const;
};

/// Symbolic comparison against the closed form when one is known, otherwise
/// Monte Carlo comparison at `points` random points (3 standard errors).
VerifyReport verify_conjecture(const KinGraph& g, const std::string& name, const SamplingOptions& opt = {},
                               int points = 5);

enum class QuadratureMethod { Automatic, TensorProduct, MonteCarlo };

struct MellinOptions {
  QuadratureMethod method = QuadratureMethod::Automatic;  // tensor product up to three variables
  double tolerance = 1e-11;
  SamplingOptions sampling;
};

/// int_{R^n_{>0}} psi_flat(X+alpha, Y) prod alpha_i^{eps_i} d alpha.
/// Requires eps_i > -1 and, for every nonempty subset S of the integration
/// variables, sum_{i in S}(eps_i + 1) below the drop in alpha_S-degree from
/// denominator to numerator; throws DivergentParameters otherwise.
Estimate psi_eps_numeric(const KinGraph& g, const KinPoint& p, const std::vector<double>& eps,
                         const MellinOptions& opt = {});

/// Same integral, analytically continued in each eps_i into (-2, -1) by one
/// integration by parts in alpha_i (exact derivative of the integrand).
/// Agrees with psi_eps_numeric where both apply.
Estimate psi_eps_continued(const KinGraph& g, const KinPoint& p, const std::vector<double>& eps,
                           const MellinOptions& opt = {});

/// The same integrals for an arbitrary rational integrand f(alpha) whose
/// variables are the first n slots of its table.
Estimate mellin_numeric(const RatFun& f, int n, const std::vector<double>& eps, const MellinOptions& opt = {});
Estimate mellin_continued(const RatFun& f, int n, const std::vector<double>& eps, const MellinOptions& opt = {});

}  // namespace cosmo::wave
