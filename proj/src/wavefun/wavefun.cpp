#include "cosmo/wavefun/wavefun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cosmo/error.hpp"
#include "sampling.hpp"
#include "json.hpp"

namespace cosmo::wave {

using sym::MPoly;

KinPoint KinPoint::make(const KinGraph& g, std::vector<Rational> values) {
  if (static_cast<int>(values.size()) != g.table()->size()) {
    throw Error(ErrorKind::DimensionMismatch, "kinematic point needs " + std::to_string(g.table()->size()) + " values");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) {
      throw Error(ErrorKind::NonPositivePoint, g.table()->name(static_cast<int>(i)) + " must be positive");
    }
  }
  for (const auto& form : graph::distinct_linear_forms(g)) {
    if (form.evaluate(values) == 0) throw Error(ErrorKind::NonPositivePoint, "a linear form vanishes at the point");
  }
  return KinPoint{std::move(values)};
}

KinPoint KinPoint::parse(const KinGraph& g, const std::string& text) {
  const auto& table = *g.table();
  std::vector<std::optional<Rational>> slots(static_cast<size_t>(table.size()));
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected NAME=VALUE in '" + item + "'", 1, 1);
    int var = table.index(item.substr(0, eq));
    if (slots[static_cast<size_t>(var)]) throw ParseError("variable assigned twice: " + item.substr(0, eq), 1, 1);
    slots[static_cast<size_t>(var)] = sym::parse_rational(item.substr(eq + 1));
  }
  std::vector<Rational> values;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ParseError("no value for " + table.name(static_cast<int>(i)), 1, 1);
    values.push_back(*slots[i]);
  }
  return make(g, std::move(values));
}

std::vector<double> KinPoint::as_doubles() const {
  std::vector<double> out;
  for (const auto& v : values) out.push_back(v.get_d());
  return out;
}

KinPoint random_point(const KinGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> x_steps(0, 16), y_steps(1, 8);
  std::vector<Rational> values;
  for (int v = 0; v < g.n(); ++v) values.emplace_back(4 + x_steps(rng), 4);
  for (int e = 0; e < g.edge_count(); ++e) values.emplace_back(y_steps(rng), 4);
  for (auto& v : values) v.canonicalize();
  return KinPoint::make(g, std::move(values));
}

namespace {

bool joins(const graph::Edge& e, int a, int b) { return (e.u == a && e.v == b) || (e.u == b && e.v == a); }

}  // namespace

std::optional<ClosedForm> closed_form(const KinGraph& g) {
  auto X = [&](int v) { return MPoly::variable(g.x_var(v)); };
  auto Y = [&](int e) { return MPoly::variable(g.y_var(e)); };
  auto inv = [](const MPoly& p) { return RatFun::quotient(1, p); };

  if (g.n() == 2 && g.edge_count() == 1) {
    return ClosedForm{"2-site", RatFun::quotient(2 * Y(0), (X(1) + Y(0)) * (X(2) + Y(0)) * (X(1) + X(2)))};
  }
  if (g.n() == 3 && g.edge_count() == 2 && joins(g.edge(0), 1, 2) && joins(g.edge(1), 2, 3)) {
    MPoly l1 = X(1) + Y(0), l2 = X(2) + Y(0) + Y(1), l3 = X(3) + Y(1);
    MPoly l4 = X(1) + X(2) + X(3), l5 = X(1) + X(2) + Y(1), l6 = X(2) + X(3) + Y(0);
    return ClosedForm{"3-site chain", RatFun::quotient(4 * Y(0) * Y(1) * (l5 + l6), l1 * l2 * l3 * l4 * l5 * l6)};
  }
  if (g.n() == 2 && g.edge_count() == 2) {
    // Y is edge 0 and Y' edge 1; the sum is symmetric under exchanging them
    MPoly l1 = X(1) + Y(0) + Y(1), l2 = X(2) + Y(0) + Y(1), l3 = X(1) + X(2) + 2 * Y(1);
    MPoly l4 = X(1) + X(2) + 2 * Y(0), l5 = X(1) + X(2);
    RatFun sum = inv(l2 * l5) + inv(l1 * l5) - inv(l1 * l4) - inv(l2 * l4) - inv(l1 * l3) - inv(l2 * l3) + inv(l1 * l2);
    return ClosedForm{"one-loop bubble", sum};
  }
  return std::nullopt;
}

RatFun psi_flat_conjectured(const KinGraph& g) {
  // common denominator: product of the distinct forms with their largest multiplicity
  auto terms = graph::pf_decomposition(g);
  std::vector<MPoly> forms;
  std::vector<int> mult;
  for (const auto& t : terms) {
    std::vector<int> local(forms.size(), 0);
    for (const auto& f : t.forms) {
      auto it = std::find(forms.begin(), forms.end(), f);
      if (it == forms.end()) {
        forms.push_back(f);
        mult.push_back(0);
        local.push_back(0);
        it = forms.end() - 1;
      }
      size_t k = static_cast<size_t>(it - forms.begin());
      mult[k] = std::max(mult[k], ++local[k]);
    }
  }
  MPoly den(1);
  for (size_t k = 0; k < forms.size(); ++k) den *= forms[k].pow(static_cast<unsigned>(mult[k]));
  MPoly num;
  for (const auto& t : terms) {
    MPoly cofactor = den;
    for (const auto& f : t.forms) cofactor = cofactor / f;
    num += t.sign * cofactor;
  }
  return RatFun::quotient(std::move(num), std::move(den));
}

Estimate psi_flat_numeric(const KinGraph& g, const KinPoint& p, const SamplingOptions& opt) {
  KinPoint checked = KinPoint::make(g, p.values);
  std::vector<double> x, y;
  for (int v = 0; v < g.n(); ++v) x.push_back(checked.values[static_cast<size_t>(v)].get_d());
  for (int e = 0; e < g.edge_count(); ++e) y.push_back(checked.values[static_cast<size_t>(g.n() + e)].get_d());
  double scale = 1.0;
  for (double xv : x) scale /= xv;
  const int n = g.n();
  const auto& edges = g.edges();

  return detail::chunked_monte_carlo(opt, [&](std::mt19937_64& rng) {
    double t[graph::kMaxGraphVertices];
    for (int v = 0; v < n; ++v) t[v] = std::exponential_distribution<double>(x[static_cast<size_t>(v)])(rng);
    double w = scale;
    for (size_t e = 0; e < edges.size(); ++e) {
      double ti = t[edges[e].u - 1], tj = t[edges[e].v - 1];
      w *= std::exp(-y[e] * std::abs(ti - tj)) - std::exp(-y[e] * (ti + tj));
    }
    return w;
  });
}

std::string VerifyReport::summary() const {
  std::string s = pass ? "PASS" : "FAIL";
  s += " (" + mode + ", ";
  if (mode == "symbolic") {
    s += std::to_string(terms.size()) + " terms)";
  } else {
    s += std::to_string(points.size()) + " points)";
  }
  return s;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "graph: " << graph << "\n";
  out << "terms: " << terms.size() << "\n";
  for (const auto& t : terms) {
    out << "  " << (t.sign > 0 ? "+" : "-") << " " << t.orientation << "  1/(";
    for (size_t i = 0; i < t.forms.size(); ++i) out << (i ? ")*(" : "(") << t.forms[i];
    out << "))\n";
  }
  out << "lhs: " << lhs << "\n";
  out << "rhs: " << rhs << "\n";
  for (const auto& p : points) {
    out << "  at";
    for (const auto& a : p.point) out << " " << a;
    char buf[160];
    std::snprintf(buf, sizeof buf, ": conjectured %.10g, numeric %.10g +- %.3g %s", p.conjectured, p.numeric.value,
                  p.numeric.error, p.pass ? "ok" : "MISMATCH");
    out << buf << "\n";
  }
  out << summary() << "\n";
  return out.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["graph"] = graph;
  j["mode"] = mode;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : terms) {
    j["terms"].push_back({{"sign", t.sign}, {"orientation", t.orientation}, {"forms", t.forms}});
  }
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  if (!points.empty()) {
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : points) {
      j["points"].push_back({{"point", p.point},
                             {"conjectured", p.conjectured},
                             {"numeric", p.numeric.value},
                             {"stderr", p.numeric.error},
                             {"samples", p.numeric.samples},
                             {"pass", p.pass}});
    }
  }
  j["pass"] = pass;
  return j.dump(2);
}

VerifyReport verify_conjecture(const KinGraph& g, const std::string& name, const SamplingOptions& opt, int points) {
  const auto& table = *g.table();
  VerifyReport r;
  r.graph = name;
  auto orientations = graph::oriented_spanning(g);
  for (const auto& t : graph::pf_decomposition(g)) {
    TermReport tr;
    tr.sign = t.sign;
    tr.orientation = orientations[static_cast<size_t>(t.orientation)].to_string();
    for (const auto& f : t.forms) tr.forms.push_back(sym::to_string(f, table));
    r.terms.push_back(std::move(tr));
  }
  RatFun conj = psi_flat_conjectured(g);
  r.lhs = sym::to_string(conj, table);
  if (auto cf = closed_form(g)) {
    r.mode = "symbolic";
    r.rhs = sym::to_string(cf->value, table);
    r.pass = conj == cf->value;
    return r;
  }
  r.mode = "numeric";
  r.rhs = "time integral, " + std::to_string(opt.samples) + " samples per point";
  r.pass = true;
  for (int k = 0; k < points; ++k) {
    KinPoint p = random_point(g, opt.seed * 1000003ULL + static_cast<std::uint64_t>(k));
    SamplingOptions local = opt;
    local.seed = opt.seed + static_cast<std::uint64_t>(k) * 7919ULL;
    PointReport pr;
    for (int i = 0; i < table.size(); ++i) {
      pr.point.push_back(table.name(i) + "=" + sym::to_string(p.values[static_cast<size_t>(i)]));
    }
    pr.conjectured = conj.evaluate(std::span<const Rational>(p.values)).get_d();
    pr.numeric = psi_flat_numeric(g, p, local);
    pr.pass = std::abs(pr.conjectured - pr.numeric.value) < 3.0 * pr.numeric.error;
    r.pass = r.pass && pr.pass;
    r.points.push_back(std::move(pr));
  }
  return r;
}

}  // namespace cosmo::wave
