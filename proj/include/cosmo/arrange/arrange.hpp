#pragma once

#include <span>
#include <string>
#include <vector>

#include "cosmo/graphkit/graph.hpp"
#include "cosmo/symcore/matrix.hpp"

namespace cosmo::arr {

using sym::MPoly;
using sym::Rational;

/// L = sum_v alpha_v + constant, the linear form l(X + alpha, Y).
struct ShiftedForm {
  std::vector<int> alpha;  // 1 for the vertices of the subgraph
  MPoly constant;          // l(X, Y)
};

/// One per distinct linear form, in distinct_linear_forms order.
std::vector<ShiftedForm> shifted_forms(const graph::KinGraph& g);
std::string to_string(const ShiftedForm& f, const graph::KinGraph& g);  // "a1+a2+X1+X2"

/// [I_{n+1} | T_1 ... T_k], with T_i the alpha coefficients over the constant.
sym::FracMatrix coefficient_matrix(const graph::KinGraph& g);

/// Primitive integer associate whose first variable (table order) has a
/// positive coefficient. Constants map to 1.
MPoly normalize_factor(const MPoly& p);

/// Distinct normalized nonconstant maximal minors of the coefficient matrix, sorted.
std::vector<MPoly> euler_discriminant(const graph::KinGraph& g);

/// Union of the normalized nonconstant maximal minors of [I | T's of the
/// term], over the terms of totally time-ordered orientations; sorted.
std::vector<MPoly> physical_singularities(const graph::KinGraph& g);

struct ChamberCount {
  long bounded = 0;
  long regions = 0;
  std::vector<long> characteristic;  // coefficients of chi(t), constant term first
};

/// Regions of the real arrangement {L_i = 0} together with the coordinate
/// hyperplanes, via the Moebius function of the intersection poset at the
/// given values of the graph variables. Throws DegeneratePoint when a factor
/// of the Euler discriminant vanishes there.
ChamberCount bounded_chambers(const graph::KinGraph& g, std::span<const Rational> point);

}  // namespace cosmo::arr
