#include "cosmo/graphkit/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

#include "cosmo/error.hpp"
#include "json.hpp"

namespace cosmo::graph {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<int> bits(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1U) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

KinGraph::KinGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1 || n > kMaxGraphVertices) throw Error(ErrorKind::InvalidGraph, "vertex count out of range");
  if (static_cast<int>(edges_.size()) > kMaxGraphEdges) throw Error(ErrorKind::InvalidGraph, "too many edges");
  std::vector<std::string> names;
  for (int v = 1; v <= n; ++v) names.push_back("X" + std::to_string(v));
  std::set<std::string> seen(names.begin(), names.end());
  for (auto& e : edges_) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loops are not supported");
    if (e.y.empty()) {
      std::string base = "Y" + std::to_string(std::min(e.u, e.v)) + std::to_string(std::max(e.u, e.v));
      e.y = base;
      while (seen.count(e.y)) e.y += "p";
    }
    if (!valid_name(e.y)) throw Error(ErrorKind::InvalidGraph, "invalid edge name '" + e.y + "'");
    if (!seen.insert(e.y).second) throw Error(ErrorKind::InvalidGraph, "duplicate edge name '" + e.y + "'");
    names.push_back(e.y);
  }
  if (!is_connected(*this, all_vertices(), all_edges())) throw Error(ErrorKind::InvalidGraph, "graph is not connected");
  table_ = sym::make_table(std::move(names));
}

KinGraph KinGraph::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidGraph, std::string("graph JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw Error(ErrorKind::InvalidGraph, "graph JSON needs an integer field \"n\"");
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error(ErrorKind::InvalidGraph, "\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e["u"].is_number_integer() ||
          !e["v"].is_number_integer()) {
        throw Error(ErrorKind::InvalidGraph, "each edge needs integer \"u\" and \"v\"");
      }
      Edge edge{e["u"].get<int>(), e["v"].get<int>(), ""};
      if (e.contains("y")) {
        if (!e["y"].is_string()) throw Error(ErrorKind::InvalidGraph, "edge name must be a string");
        edge.y = e["y"].get<std::string>();
      }
      edges.push_back(std::move(edge));
    }
  }
  return KinGraph(j["n"].get<int>(), std::move(edges));
}

KinGraph KinGraph::chain(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v, v + 1, ""});
  return KinGraph(n, std::move(edges));
}

std::uint32_t KinGraph::endpoints(int e) const noexcept {
  const Edge& ed = edges_[static_cast<size_t>(e)];
  return (1U << (ed.u - 1)) | (1U << (ed.v - 1));
}

std::string KinGraph::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"y", e.y}});
  return j.dump();
}

bool is_connected(const KinGraph& g, std::uint32_t vertices, std::uint32_t edges) {
  if (vertices == 0) return false;
  std::uint32_t reached = vertices & (~vertices + 1U);  // lowest vertex
  for (bool grew = true; grew;) {
    grew = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!(edges & (1U << e))) continue;
      std::uint32_t ends = g.endpoints(e);
      if ((ends & reached) && (ends & ~reached)) {
        reached |= ends;
        grew = true;
      }
    }
  }
  return reached == vertices;
}

MPoly linear_form(const Subgraph& h, const KinGraph& g) {
  MPoly form;
  for (int v : bits(h.vertices)) {
    if (v >= g.n()) throw Error(ErrorKind::InvalidSubgraph, "vertex outside the graph");
    form += MPoly::variable(g.x_var(v + 1));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    std::uint32_t ends = g.endpoints(e);
    bool in_h = h.edges & (1U << e);
    int inside = std::popcount(ends & h.vertices);
    if (in_h && inside != 2) throw Error(ErrorKind::InvalidSubgraph, "edge of the subgraph leaves its vertex set");
    if (inside == 1) form += MPoly::variable(g.y_var(e));
    if (inside == 2 && !in_h) form += MPoly::variable(g.y_var(e)) * 2;
  }
  if (h.edges & ~g.all_edges()) throw Error(ErrorKind::InvalidSubgraph, "edge outside the graph");
  return form;
}

namespace {

bool canonical_less(const Subgraph& a, const Subgraph& b) {
  int ca = std::popcount(a.vertices), cb = std::popcount(b.vertices);
  if (ca != cb) return ca > cb;
  if (a.vertices != b.vertices) return bits(a.vertices) < bits(b.vertices);
  int ea = std::popcount(a.edges), eb = std::popcount(b.edges);
  if (ea != eb) return ea > eb;
  return bits(a.edges) < bits(b.edges);
}

}  // namespace

std::vector<Subgraph> connected_subgraphs(const KinGraph& g) {
  std::vector<Subgraph> out;
  for (std::uint32_t vs = 1; vs <= g.all_vertices(); ++vs) {
    std::uint32_t induced = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      if ((g.endpoints(e) & ~vs) == 0) induced |= 1U << e;
    }
    if (!is_connected(g, vs, induced)) continue;
    // every subset of the induced edges, including the empty one
    for (std::uint32_t es = induced;; es = (es - 1U) & induced) {
      if (is_connected(g, vs, es)) out.push_back({vs, es});
      if (es == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<MPoly> distinct_linear_forms(const KinGraph& g) {
  std::vector<MPoly> out;
  for (const auto& h : connected_subgraphs(g)) {
    MPoly f = linear_form(h, g);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  return out;
}

std::string describe(const Subgraph& h, const KinGraph& g) {
  std::string s = "{";
  bool first = true;
  for (int v : bits(h.vertices)) {
    s += (first ? "" : ",") + std::to_string(v + 1);
    first = false;
  }
  s += ";";
  first = true;
  for (int e : bits(h.edges)) {
    s += (first ? "" : ",") + g.edge(e).y;
    first = false;
  }
  return s + "}";
}

}  // namespace cosmo::graph
