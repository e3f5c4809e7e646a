#pragma once

#include <string>
#include <vector>

#include "cosmo/graphkit/graph.hpp"
#include "cosmo/symcore/ratfun.hpp"

namespace cosmo::graph {

enum class EdgeState : char { Forward = '>', Backward = '<', Deleted = 'x' };

/// One state per edge; Forward points from Edge::u to Edge::v.
struct OrientedSpanning {
  std::vector<EdgeState> states;
  long index = 0;  // position in the base-3 enumeration

  int deleted_count() const;
  std::uint32_t kept_edges() const;
  std::string to_string() const;
  static OrientedSpanning parse(const std::string& text, const KinGraph& g);  // throws ParseError
};

/// All 3^|E| orientations, edge 0 the most significant digit, Forward <
/// Backward < Deleted.
std::vector<OrientedSpanning> oriented_spanning(const KinGraph& g);

/// Connected components of the kept edges (isolated vertices included),
/// ordered by their lowest vertex.
std::vector<Subgraph> components(const OrientedSpanning& o, const KinGraph& g);

/// Outgoing minus incoming kept edges at a vertex (1-based), within `h`.
int vertex_degree(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h, int vertex);

bool has_directed_cycle(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h);

/// Which connected subgraphs K of an oriented component count as positive.
/// Outflow: every kept edge between K and the rest of the component leaves K
/// (and there is at least one). NetDegree: the degrees (taken in the
/// component) sum to a positive number. The two agree whenever no subgraph
/// has three or more crossing edges, e.g. on chains and two-vertex graphs;
/// on a star only Outflow reproduces the time integral.
enum class PositivityRule { Outflow, NetDegree };

std::vector<Subgraph> positive_subgraphs(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h,
                                         PositivityRule rule = PositivityRule::Outflow);

/// Every (m-1)-element set of distinct entries of `plus` whose members are
/// pairwise vertex-disjoint or nested (vertex and edge containment).
std::vector<std::vector<Subgraph>> admissible_subsets(const std::vector<Subgraph>& plus, int m);

/// Expanded form of R for one component: each entry lists the subgraphs whose
/// linear forms make up one summand 1/prod(l). Empty when R vanishes.
std::vector<std::vector<Subgraph>> component_terms(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h,
                                                   PositivityRule rule = PositivityRule::Outflow);

sym::RatFun rational_R(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h,
                       PositivityRule rule = PositivityRule::Outflow);

struct PFTerm {
  int sign = 1;
  std::vector<MPoly> forms;        // n linear forms, sorted
  std::vector<Subgraph> sources;   // subgraph behind each form (same order)
  long orientation = 0;            // index into oriented_spanning()
  bool time_ordered = false;       // the orientation contributes exactly this one term
};

/// Signed expansion of the wavefunction: one group per orientation with
/// nonzero R-product, sign (-1)^(#deleted). Groups come ordered by deleted
/// edge count, then enumeration index.
std::vector<PFTerm> pf_decomposition(const KinGraph& g, PositivityRule rule = PositivityRule::Outflow);

/// sign / prod(forms)
sym::RatFun term_value(const PFTerm& t);

}  // namespace cosmo::graph
