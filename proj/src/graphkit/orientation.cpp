#include "cosmo/graphkit/orientation.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "cosmo/error.hpp"

namespace cosmo::graph {

int OrientedSpanning::deleted_count() const {
  return static_cast<int>(std::count(states.begin(), states.end(), EdgeState::Deleted));
}

std::uint32_t OrientedSpanning::kept_edges() const {
  std::uint32_t mask = 0;
  for (size_t e = 0; e < states.size(); ++e) {
    if (states[e] != EdgeState::Deleted) mask |= 1U << e;
  }
  return mask;
}

std::string OrientedSpanning::to_string() const {
  std::string s;
  for (auto st : states) s += static_cast<char>(st);
  return s;
}

OrientedSpanning OrientedSpanning::parse(const std::string& text, const KinGraph& g) {
  if (static_cast<int>(text.size()) != g.edge_count()) {
    throw ParseError("orientation needs one symbol per edge", 1, static_cast<int>(text.size()) + 1);
  }
  OrientedSpanning o;
  for (size_t i = 0; i < text.size(); ++i) {
    long digit = 0;
    switch (text[i]) {
      case '>': o.states.push_back(EdgeState::Forward); digit = 0; break;
      case '<': o.states.push_back(EdgeState::Backward); digit = 1; break;
      case 'x': o.states.push_back(EdgeState::Deleted); digit = 2; break;
      default: throw ParseError(std::string("unexpected orientation symbol '") + text[i] + "'", 1, static_cast<int>(i) + 1);
    }
    o.index = o.index * 3 + digit;
  }
  return o;
}

std::vector<OrientedSpanning> oriented_spanning(const KinGraph& g) {
  const int m = g.edge_count();
  long total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  std::vector<OrientedSpanning> out;
  out.reserve(static_cast<size_t>(total));
  static const EdgeState kStates[] = {EdgeState::Forward, EdgeState::Backward, EdgeState::Deleted};
  for (long idx = 0; idx < total; ++idx) {
    OrientedSpanning o;
    o.index = idx;
    o.states.resize(static_cast<size_t>(m));
    long rest = idx;
    for (int e = m - 1; e >= 0; --e) {
      o.states[static_cast<size_t>(e)] = kStates[rest % 3];
      rest /= 3;
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Subgraph> components(const OrientedSpanning& o, const KinGraph& g) {
  std::uint32_t kept = o.kept_edges();
  std::uint32_t left = g.all_vertices();
  std::vector<Subgraph> out;
  while (left) {
    std::uint32_t reached = left & (~left + 1U);
    for (bool grew = true; grew;) {
      grew = false;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (!(kept & (1U << e))) continue;
        std::uint32_t ends = g.endpoints(e);
        if ((ends & reached) && (ends & ~reached)) {
          reached |= ends;
          grew = true;
        }
      }
    }
    std::uint32_t es = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      if ((kept & (1U << e)) && (g.endpoints(e) & reached)) es |= 1U << e;
    }
    out.push_back({reached, es});
    left &= ~reached;
  }
  return out;
}

int vertex_degree(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h, int vertex) {
  int deg = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!(h.edges & (1U << e))) continue;
    const Edge& ed = g.edge(e);
    EdgeState st = o.states[static_cast<size_t>(e)];
    if (st == EdgeState::Deleted) continue;
    int tail = st == EdgeState::Forward ? ed.u : ed.v;
    int head = st == EdgeState::Forward ? ed.v : ed.u;
    if (tail == vertex) ++deg;
    if (head == vertex) --deg;
  }
  return deg;
}

bool has_directed_cycle(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h) {
  // Kahn's algorithm: a cycle remains iff not every vertex can be peeled.
  std::vector<int> indeg(static_cast<size_t>(g.n() + 1), 0);
  std::vector<std::pair<int, int>> arcs;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!(h.edges & (1U << e))) continue;
    EdgeState st = o.states[static_cast<size_t>(e)];
    if (st == EdgeState::Deleted) continue;
    const Edge& ed = g.edge(e);
    int tail = st == EdgeState::Forward ? ed.u : ed.v;
    int head = st == EdgeState::Forward ? ed.v : ed.u;
    arcs.emplace_back(tail, head);
    ++indeg[static_cast<size_t>(head)];
  }
  std::vector<int> ready;
  for (int v = 1; v <= g.n(); ++v) {
    if ((h.vertices & (1U << (v - 1))) && indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
  }
  int peeled = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++peeled;
    for (const auto& [t, hd] : arcs) {
      if (t == v && --indeg[static_cast<size_t>(hd)] == 0) ready.push_back(hd);
    }
  }
  return peeled != std::popcount(h.vertices);
}

std::vector<Subgraph> positive_subgraphs(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h,
                                         PositivityRule rule) {
  std::vector<Subgraph> out;
  std::vector<int> deg(static_cast<size_t>(g.n() + 1), 0);
  for (int v = 1; v <= g.n(); ++v) deg[static_cast<size_t>(v)] = vertex_degree(o, g, h, v);
  auto qualifies = [&](std::uint32_t vs) {
    if (rule == PositivityRule::NetDegree) {
      int total = 0;
      for (int v = 1; v <= g.n(); ++v) {
        if (vs & (1U << (v - 1))) total += deg[static_cast<size_t>(v)];
      }
      return total > 0;
    }
    int crossing = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      EdgeState st = o.states[static_cast<size_t>(e)];
      if (!(h.edges & (1U << e)) || st == EdgeState::Deleted) continue;
      const Edge& ed = g.edge(e);
      int tail = st == EdgeState::Forward ? ed.u : ed.v;
      int head = st == EdgeState::Forward ? ed.v : ed.u;
      bool tail_in = vs & (1U << (tail - 1)), head_in = vs & (1U << (head - 1));
      if (tail_in == head_in) continue;
      if (head_in) return false;
      ++crossing;
    }
    return crossing > 0;
  };
  for (std::uint32_t vs = h.vertices;; vs = (vs - 1U) & h.vertices) {
    if (vs == 0) break;
    if (qualifies(vs)) {
      std::uint32_t induced = 0;
      for (int e = 0; e < g.edge_count(); ++e) {
        if ((h.edges & (1U << e)) && (g.endpoints(e) & ~vs) == 0) induced |= 1U << e;
      }
      for (std::uint32_t es = induced;; es = (es - 1U) & induced) {
        if (is_connected(g, vs, es)) out.push_back({vs, es});
        if (es == 0) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Subgraph>> admissible_subsets(const std::vector<Subgraph>& plus, int m) {
  std::vector<std::vector<Subgraph>> out;
  const size_t want = static_cast<size_t>(std::max(0, m - 1));
  std::vector<Subgraph> pick;
  auto compatible = [](const Subgraph& a, const Subgraph& b) {
    return a.disjoint(b) || a.contains(b) || b.contains(a);
  };
  std::function<void(size_t)> rec = [&](size_t start) {
    if (pick.size() == want) {
      out.push_back(pick);
      return;
    }
    for (size_t i = start; i < plus.size(); ++i) {
      if (plus.size() - i < want - pick.size()) break;
      if (std::find(pick.begin(), pick.end(), plus[i]) != pick.end()) continue;
      bool ok = std::all_of(pick.begin(), pick.end(), [&](const Subgraph& s) { return compatible(s, plus[i]); });
      if (!ok) continue;
      pick.push_back(plus[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Subgraph>> component_terms(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h,
                                                   PositivityRule rule) {
  const int m = std::popcount(h.vertices);
  if (m == 1) return {{h}};
  if (has_directed_cycle(o, g, h)) return {};
  std::vector<std::vector<Subgraph>> out;
  for (auto& s : admissible_subsets(positive_subgraphs(o, g, h, rule), m)) {
    s.insert(s.begin(), h);
    out.push_back(std::move(s));
  }
  return out;
}

sym::RatFun rational_R(const OrientedSpanning& o, const KinGraph& g, const Subgraph& h, PositivityRule rule) {
  sym::RatFun total;
  for (const auto& term : component_terms(o, g, h, rule)) {
    MPoly den = 1;
    for (const auto& k : term) den *= linear_form(k, g);
    total += sym::RatFun::quotient(1, den);
  }
  return total;
}

std::vector<PFTerm> pf_decomposition(const KinGraph& g, PositivityRule rule) {
  auto orientations = oriented_spanning(g);
  std::stable_sort(orientations.begin(), orientations.end(),
                   [](const OrientedSpanning& a, const OrientedSpanning& b) { return a.deleted_count() < b.deleted_count(); });
  std::vector<PFTerm> out;
  for (const auto& o : orientations) {
    std::vector<std::vector<Subgraph>> partial{{}};
    for (const auto& comp : components(o, g)) {
      auto terms = component_terms(o, g, comp, rule);
      std::vector<std::vector<Subgraph>> next;
      for (const auto& p : partial) {
        for (const auto& t : terms) {
          auto joined = p;
          joined.insert(joined.end(), t.begin(), t.end());
          next.push_back(std::move(joined));
        }
      }
      partial = std::move(next);
      if (partial.empty()) break;
    }
    for (const auto& subs : partial) {
      std::vector<std::pair<MPoly, Subgraph>> pairs;
      for (const auto& s : subs) pairs.emplace_back(linear_form(s, g), s);
      std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
      PFTerm t;
      t.sign = (o.deleted_count() % 2 == 0) ? 1 : -1;
      for (auto& [f, s] : pairs) {
        t.forms.push_back(std::move(f));
        t.sources.push_back(s);
      }
      t.orientation = o.index;
      t.time_ordered = partial.size() == 1;
      out.push_back(std::move(t));
    }
  }
  return out;
}

sym::RatFun term_value(const PFTerm& t) {
  MPoly den = 1;
  for (const auto& f : t.forms) den *= f;
  return sym::RatFun::quotient(t.sign, den);
}

}  // namespace cosmo::graph
