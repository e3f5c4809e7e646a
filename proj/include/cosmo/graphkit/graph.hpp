#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosmo/symcore/mpoly.hpp"

namespace cosmo::graph {

using sym::MPoly;

struct Edge {
  int u = 0;  // 1-based endpoints
  int v = 0;
  std::string y;
};

/// Subset of vertices and edges as bitmasks (bit i = vertex i+1, bit e = edge e).
struct Subgraph {
  std::uint32_t vertices = 0;
  std::uint32_t edges = 0;

  bool contains(const Subgraph& o) const noexcept {
    return (o.vertices & ~vertices) == 0 && (o.edges & ~edges) == 0;
  }
  bool disjoint(const Subgraph& o) const noexcept { return (vertices & o.vertices) == 0; }
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
  friend auto operator<=>(const Subgraph&, const Subgraph&) = default;
};

inline constexpr int kMaxGraphVertices = 24;
inline constexpr int kMaxGraphEdges = 20;

/// Connected multigraph carrying vertex energies X1..Xn and one energy per
/// edge. The variable table lists X1..Xn first, then the edge names in order.
class KinGraph {
 public:
  /// Validates and builds; throws InvalidGraph.
  KinGraph(int n, std::vector<Edge> edges);
  /// {"n": 3, "edges": [{"u":1,"v":2,"y":"Y12"}, ...]}; "y" is optional.
  static KinGraph from_json(const std::string& text);
  static KinGraph chain(int n);

  int n() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<size_t>(e)); }
  const sym::VarTablePtr& table() const noexcept { return table_; }

  int x_var(int vertex) const noexcept { return vertex - 1; }
  int y_var(int edge) const noexcept { return n_ + edge; }
  std::uint32_t all_vertices() const noexcept { return (1U << n_) - 1U; }
  std::uint32_t all_edges() const noexcept { return edges_.empty() ? 0U : ((1U << edges_.size()) - 1U); }
  /// Bitmask of the endpoints of edge e.
  std::uint32_t endpoints(int e) const noexcept;

  std::string to_json() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  sym::VarTablePtr table_;
};

/// Whether (vertices, edges) is connected using only the given edges.
bool is_connected(const KinGraph& g, std::uint32_t vertices, std::uint32_t edges);

/// Sum of X over V(H), plus Y for every edge of G leaving V(H), plus 2Y for
/// every edge of G inside V(H) that H omits. Throws InvalidSubgraph if an edge
/// of H has an endpoint outside V(H).
MPoly linear_form(const Subgraph& h, const KinGraph& g);

/// Every connected subgraph (nonempty vertex set plus any edge subset that
/// keeps it connected), ordered by vertex count descending, then vertex set,
/// then edge count descending, then edge set.
std::vector<Subgraph> connected_subgraphs(const KinGraph& g);

/// Distinct linear forms of the connected subgraphs, in the order above.
std::vector<MPoly> distinct_linear_forms(const KinGraph& g);

/// "{1,2;Y12}"-style label used in reports.
std::string describe(const Subgraph& h, const KinGraph& g);

}  // namespace cosmo::graph
