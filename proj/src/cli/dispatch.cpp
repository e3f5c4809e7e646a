#include "cosmo/cli/dispatch.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "cosmo/arrange/arrange.hpp"
#include "cosmo/cli/parse.hpp"
#include "cosmo/error.hpp"
#include "cosmo/gkzcayley/gkz.hpp"
#include "cosmo/pfaffian/pfaffian.hpp"
#include "cosmo/wavefun/wavefun.hpp"
#include "json.hpp"

namespace cosmo::cli {

namespace {

using graph::KinGraph;
using json = nlohmann::ordered_json;
using sym::Rational;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

KinGraph load_graph(const std::string& path) { return KinGraph::from_json(read_text(path)); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

// "3", "-3/2" or "1.25", exactly
Rational parse_rational(const std::string& text) {
  std::string s = text;
  Rational scale = 1;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    for (size_t k = dot + 1; k < s.size(); ++k) scale *= 10;
    s.erase(dot, 1);
  }
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw UsageError("not a number: " + text);
  q.canonicalize();
  return q / scale;
}

// "X1=2,X2=2,Y=1" over every variable of the table
std::vector<Rational> parse_assignments(const sym::VarTable& table, const std::string& text) {
  std::vector<Rational> values(static_cast<size_t>(table.size()));
  std::vector<bool> seen(values.size(), false);
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected NAME=VALUE, got '" + item + "'");
    int v = table.index(item.substr(0, eq));
    if (seen[static_cast<size_t>(v)]) throw UsageError("variable assigned twice: " + table.name(v));
    seen[static_cast<size_t>(v)] = true;
    values[static_cast<size_t>(v)] = parse_rational(item.substr(eq + 1));
  }
  for (int v = 0; v < table.size(); ++v) {
    if (!seen[static_cast<size_t>(v)]) throw UsageError("no value for " + table.name(v));
  }
  return values;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: " + item);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string term_text(const std::vector<std::string>& forms) {
  std::string s = "1/(";
  for (size_t i = 0; i < forms.size(); ++i) s += (i ? ")*(" : "(") + forms[i];
  return s + "))";
}

struct Context {
  std::ostream& out;
  bool as_json = false;
  std::uint64_t seed = 1;
};

// ---- graph commands ----

int cmd_psi_flat(Context& c, const std::string& path, const std::string& at, long samples) {
  auto g = load_graph(path);
  const auto& table = *g.table();
  auto conj = wave::psi_flat_conjectured(g);
  auto cf = wave::closed_form(g);
  json j{{"schema", 1}, {"command", "psi-flat"}, {"conjectured", sym::to_string(conj, table)}};
  if (cf) j["closed_form"] = {{"name", cf->name}, {"value", sym::to_string(cf->value, table)}};
  if (!at.empty()) {
    auto p = wave::KinPoint::parse(g, at);
    auto est = wave::psi_flat_numeric(g, p, {samples, c.seed, 0});
    j["point"] = at;
    j["value"] = conj.evaluate(std::span<const Rational>(p.values)).get_d();
    j["numeric"] = {{"value", est.value}, {"stderr", est.error}, {"samples", est.samples}};
  }
  if (c.as_json) {
    c.out << j.dump(2) << "\n";
    return kSuccess;
  }
  c.out << "conjectured: " << j["conjectured"].get<std::string>() << "\n";
  if (cf) c.out << "closed form (" << cf->name << "): " << j["closed_form"]["value"].get<std::string>() << "\n";
  if (!at.empty()) {
    c.out << "at " << at << ": " << num(j["value"].get<double>()) << ", numeric " << num(j["numeric"]["value"].get<double>())
          << " +- " << num(j["numeric"]["stderr"].get<double>()) << " (" << j["numeric"]["samples"].get<long>()
          << " samples)\n";
  }
  return kSuccess;
}

int cmd_pfd(Context& c, const std::string& path, const std::string& rule_name) {
  auto g = load_graph(path);
  graph::PositivityRule rule;
  if (rule_name == "outflow") {
    rule = graph::PositivityRule::Outflow;
  } else if (rule_name == "net-degree") {
    rule = graph::PositivityRule::NetDegree;
  } else {
    throw UsageError("unknown rule " + rule_name);
  }
  auto orientations = graph::oriented_spanning(g);
  auto terms = graph::pf_decomposition(g, rule);
  json j{{"schema", 1}, {"command", "pfd"}, {"terms", json::array()}};
  sym::RatFun sum;
  std::ostringstream text;
  for (const auto& t : terms) {
    std::vector<std::string> forms;
    for (const auto& f : t.forms) forms.push_back(sym::to_string(f, *g.table()));
    const std::string o = orientations[static_cast<size_t>(t.orientation)].to_string();
    j["terms"].push_back({{"sign", t.sign}, {"orientation", o}, {"forms", forms}});
    text << (t.sign > 0 ? "+ " : "- ") << o << "  " << term_text(forms) << "\n";
    sum += graph::term_value(t);
  }
  j["sum"] = sym::to_string(sum, *g.table());
  if (c.as_json) {
    c.out << j.dump(2) << "\n";
  } else {
    c.out << text.str() << "sum: " << j["sum"].get<std::string>() << "\n";
  }
  return kSuccess;
}

int cmd_verify(Context& c, const std::string& path, long samples, int points, bool details) {
  auto g = load_graph(path);
  auto report = wave::verify_conjecture(g, path, {samples, c.seed, 0}, points);
  if (c.as_json) {
    c.out << report.to_json() << "\n";
  } else {
    c.out << (details ? report.to_text() : report.summary() + "\n");
  }
  return report.pass ? kSuccess : kCheckFailed;
}

int cmd_psi_eps(Context& c, const std::string& path, const std::string& at, const std::string& eps_text,
                const std::string& method, bool continued, long samples, double tolerance) {
  auto g = load_graph(path);
  auto p = wave::KinPoint::parse(g, at);
  auto eps = parse_doubles(eps_text);
  if (static_cast<int>(eps.size()) != g.n()) throw UsageError("--eps needs " + std::to_string(g.n()) + " values");
  wave::MellinOptions opt;
  opt.tolerance = tolerance;
  opt.sampling = {samples, c.seed, 0};
  if (method == "auto") {
    opt.method = wave::QuadratureMethod::Automatic;
  } else if (method == "tensor") {
    opt.method = wave::QuadratureMethod::TensorProduct;
  } else if (method == "mc") {
    opt.method = wave::QuadratureMethod::MonteCarlo;
  } else {
    throw UsageError("unknown method " + method);
  }
  auto est = continued ? wave::psi_eps_continued(g, p, eps, opt) : wave::psi_eps_numeric(g, p, eps, opt);
  if (c.as_json) {
    json j{{"schema", 1}, {"command", "psi-eps"}, {"point", at},       {"eps", eps},
           {"value", est.value}, {"error", est.error}, {"samples", est.samples}};
    c.out << j.dump(2) << "\n";
  } else {
    c.out << "psi_eps = " << num(est.value) << " +- " << num(est.error) << "\n";
  }
  return kSuccess;
}

int cmd_linear_forms(Context& c, const std::string& path) {
  auto g = load_graph(path);
  std::vector<std::string> forms;
  for (const auto& f : graph::distinct_linear_forms(g)) forms.push_back(sym::to_string(f, *g.table()));
  if (c.as_json) {
    c.out << json{{"schema", 1}, {"command", "linear-forms"}, {"forms", forms}}.dump(2) << "\n";
  } else {
    for (const auto& f : forms) c.out << f << "\n";
  }
  return kSuccess;
}

int cmd_orientations(Context& c, const std::string& path) {
  auto g = load_graph(path);
  json j{{"schema", 1}, {"command", "orientations"}, {"orientations", json::array()}};
  for (const auto& o : graph::oriented_spanning(g)) {
    bool cyclic = graph::has_directed_cycle(o, g, graph::Subgraph{g.all_vertices(), o.kept_edges()});
    j["orientations"].push_back(
        {{"index", o.index}, {"orientation", o.to_string()}, {"deleted", o.deleted_count()}, {"cyclic", cyclic}});
    if (!c.as_json) {
      c.out << o.to_string() << "  deleted=" << o.deleted_count() << (cyclic ? "  cyclic" : "") << "\n";
    }
  }
  if (c.as_json) c.out << j.dump(2) << "\n";
  return kSuccess;
}

// ---- operator commands ----

std::vector<std::pair<std::string, ops::WeylOp>> selected(const OperatorSet& set, const std::vector<std::string>& names) {
  if (names.empty()) return set.operators;
  std::vector<std::pair<std::string, ops::WeylOp>> out;
  for (const auto& n : names) out.emplace_back(n, set.at(n));
  return out;
}

int cmd_mellin(Context& c, const std::string& path, const std::vector<std::string>& names) {
  auto set = parse_operator_set(read_text(path));
  json j{{"schema", 1}, {"command", "mellin"}, {"operators", json::object()}};
  for (const auto& [name, op] : selected(set, names)) {
    std::string s = ops::to_string(ops::mellin(op));
    j["operators"][name] = s;
    if (!c.as_json) c.out << name << ": " << s << "\n";
  }
  if (c.as_json) c.out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_ann_check(Context& c, const std::string& path, const std::string& function,
                  const std::vector<std::string>& names) {
  auto set = parse_operator_set(read_text(path));
  auto f = parse_ratfun(function, *set.context.table);
  bool all = true;
  json j{{"schema", 1}, {"command", "ann-check"}, {"function", sym::to_string(f, *set.context.table)},
         {"results", json::object()}};
  for (const auto& [name, op] : selected(set, names)) {
    auto r = ops::weyl_apply(op, f);
    std::string s = sym::to_string(r, *set.context.table);
    all = all && r.is_zero();
    j["results"][name] = s;
    if (!c.as_json) c.out << name << ": " << s << "\n";
  }
  j["pass"] = all;
  if (c.as_json) c.out << j.dump(2) << "\n";
  return all ? kSuccess : kCheckFailed;
}

int cmd_ann_gens(Context& c, const std::string& poly, const std::string& vars, const std::string& diff) {
  auto table = sym::make_table(split(vars, ','));
  auto ctx = ops::WeylContext::make(table, split(diff, ','));
  auto p = parse_poly(poly, *table);
  auto gens = ops::ann_generators(ctx, p);
  auto inv = sym::RatFun::quotient(1, p);
  bool all = true;
  json j{{"schema", 1}, {"command", "ann-gens"}, {"polynomial", sym::to_string(p, *table)}, {"generators", json::array()}};
  for (const auto& g : gens) {
    bool ok = ops::weyl_apply(g, inv).is_zero();
    all = all && ok;
    j["generators"].push_back({{"operator", ops::to_string(g)}, {"annihilates", ok}});
    if (!c.as_json) c.out << ops::to_string(g) << (ok ? "" : "  (does not annihilate)") << "\n";
  }
  j["pass"] = all;
  if (c.as_json) c.out << j.dump(2) << "\n";
  return all ? kSuccess : kCheckFailed;
}

// ---- GKZ and singularities ----

std::vector<gkz::EpsAffine> parse_kappa(const std::string& text) {
  auto table = sym::make_table({"eps"});
  std::vector<gkz::EpsAffine> out;
  for (const auto& item : split(text, ',')) {
    auto p = parse_poly(item, *table);
    if (p.degree() > 1) throw UsageError("kappa entries must be affine in eps: " + item);
    auto coeffs = p.coefficients_in(0);
    coeffs.resize(2);
    out.push_back({coeffs[0].constant_value(), coeffs[1].constant_value()});
  }
  return out;
}

int cmd_gkz(Context& c, const std::string& path, const std::string& kappa_text) {
  auto g = load_graph(path);
  auto s = gkz::cayley_from_graph(g);
  auto kappa = kappa_text.empty() ? gkz::default_kappa(g.n(), static_cast<int>(s.supports.size()))
                                  : parse_kappa(kappa_text);
  auto d = gkz::gkz_system(s.supports, kappa);
  if (!c.as_json) {
    c.out << gkz::render(d, &s, g.table().get());
    return kSuccess;
  }
  json j{{"schema", 1}, {"command", "gkz"}, {"A", json::array()}};
  for (int r = 0; r < d.A.rows(); ++r) {
    json row = json::array();
    for (int col = 0; col < d.A.cols(); ++col) row.push_back(d.A(r, col).get_si());
    j["A"].push_back(row);
  }
  for (const auto& k : d.kappa) j["kappa"].push_back(gkz::to_string(k));
  for (const auto& v : s.values) j["coefficients"].push_back(sym::to_string(v, *g.table()));
  for (const auto& b : d.binomials) j["binomials"].push_back(gkz::to_string(b));
  for (const auto& e : d.euler) j["euler"].push_back(gkz::to_string(e));
  c.out << j.dump(2) << "\n";
  return kSuccess;
}

int cmd_discriminant(Context& c, const std::string& path, bool physical) {
  auto g = load_graph(path);
  auto factors = physical ? arr::physical_singularities(g) : arr::euler_discriminant(g);
  std::vector<std::string> text;
  for (const auto& f : factors) text.push_back(sym::to_string(f, *g.table()));
  std::sort(text.begin(), text.end());
  if (c.as_json) {
    c.out << json{{"schema", 1}, {"command", "discriminant"}, {"physical", physical}, {"factors", text}}.dump(2) << "\n";
  } else {
    for (const auto& t : text) c.out << t << "\n";
  }
  return kSuccess;
}

int cmd_chambers(Context& c, const std::string& path, const std::string& at) {
  auto g = load_graph(path);
  auto values = parse_assignments(*g.table(), at);
  auto count = arr::bounded_chambers(g, values);
  if (c.as_json) {
    c.out << json{{"schema", 1},           {"command", "chambers"},     {"point", at},
                  {"bounded", count.bounded}, {"regions", count.regions}, {"characteristic", count.characteristic}}
                 .dump(2)
          << "\n";
  } else {
    c.out << count.bounded << "\n";
  }
  return kSuccess;
}

// ---- Pfaffian systems ----

pf::DMono parse_dmono(const std::string& text, const ops::WeylContext& ctx) {
  auto op = parse_weyl(text, ctx);
  if (op.terms().size() != 1) throw UsageError("basis element must be one derivative monomial: " + text);
  const auto& [key, coeff] = *op.terms().begin();
  bool plain = coeff == sym::RatFun(1) && std::all_of(key.x.begin(), key.x.end(), [](int e) { return e == 0; });
  if (!plain) throw UsageError("basis element must be one derivative monomial: " + text);
  return key.d;
}

struct PfaffianArgs {
  std::string ideal;
  std::string vars;
  std::string basis;
  std::string gauge;
  std::string eps_var = "eps";
  int max_order = 4;
  bool transpose = false;
  bool check_flat = false;
  bool check_eps = false;
};

int cmd_pfaffian(Context& c, const PfaffianArgs& a) {
  std::vector<std::string> vars = split(a.vars, ',');
  auto set = parse_operator_set(read_text(a.ideal), a.vars.empty() ? nullptr : &vars);
  pf::DeriveOptions opt;
  opt.max_order = a.max_order;
  if (!a.basis.empty()) {
    for (const auto& m : split(a.basis, ',')) opt.basis.push_back(parse_dmono(m, set.context));
  }
  auto p = pf::derive_pfaffian(set.generators, opt);
  const auto& table = *set.context.table;
  if (!a.gauge.empty()) {
    auto g = parse_matrix(read_text(a.gauge), table);
    p = pf::gauge_transform(p, a.transpose ? g.transpose() : g);
  }
  int status = kSuccess;
  json j{{"schema", 1}, {"command", "pfaffian"}, {"rank", p.rank()}};
  for (const auto& b : p.basis) j["basis"].push_back(pf::to_string(b, set.context));
  for (size_t i = 0; i < p.matrices.size(); ++i) {
    json rows = json::array();
    const auto& m = p.matrices[i];
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int col = 0; col < m.cols(); ++col) row.push_back(sym::to_string(m(r, col), table));
      rows.push_back(row);
    }
    j["matrices"][table.name(set.context.vars[i])] = rows;
  }
  std::vector<std::string> locus;
  for (const auto& f : pf::singular_locus(p)) locus.push_back(sym::to_string(f, table));
  j["singular_locus"] = locus;
  std::ostringstream text;
  text << pf::render(p) << "singular locus:";
  for (const auto& f : locus) text << " " << f;
  text << "\n";
  if (a.check_flat) {
    bool flat = pf::check_flat(p);
    j["flat"] = flat;
    text << "flat: " << (flat ? "yes" : "no") << "\n";
    if (!flat) status = kCheckFailed;
  }
  if (a.check_eps) {
    bool factorized = pf::eps_factorized(p, table.index(a.eps_var));
    j["eps_factorized"] = factorized;
    text << "eps-factorized: " << (factorized ? "yes" : "no") << "\n";
    if (!factorized) status = kCheckFailed;
  }
  c.out << (c.as_json ? j.dump(2) + "\n" : text.str());
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for flat-space wavefunctions of cosmological graphs", "cosmo"};
  app.require_subcommand(1);
  Context ctx{out};
  std::function<int()> action;

  auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_flag("--json", ctx.as_json, "machine-readable output");
    if (seeded) sub->add_option("--seed", ctx.seed, "random seed")->capture_default_str();
  };

  std::string path, at, text, eps, method = "auto", rule = "outflow", kappa, vars, diff;
  std::vector<std::string> names;
  long samples = 1'000'000;
  int points = 5;
  double tolerance = 1e-11;
  bool flag = false;
  PfaffianArgs pa;

  auto* psi_flat = app.add_subcommand("psi-flat", "conjectured wavefunction, closed form and Monte Carlo value");
  psi_flat->add_option("graph", path, "graph JSON file")->required();
  psi_flat->add_option("--at", at, "point, e.g. X1=2,X2=2,Y=1");
  psi_flat->add_option("--samples", samples)->capture_default_str();
  common(psi_flat, true);
  psi_flat->callback([&] { action = [&] { return cmd_psi_flat(ctx, path, at, samples); }; });

  auto* pfd = app.add_subcommand("pfd", "signed partial-fraction terms from oriented spanning subgraphs");
  pfd->add_option("graph", path)->required();
  pfd->add_option("--rule", rule, "positivity rule: outflow or net-degree")->capture_default_str();
  common(pfd, false);
  pfd->callback([&] { action = [&] { return cmd_pfd(ctx, path, rule); }; });

  auto* verify = app.add_subcommand("verify", "check the decomposition against the wavefunction");
  verify->add_option("graph", path)->required();
  verify->add_option("--samples", samples)->capture_default_str();
  verify->add_option("--points", points)->capture_default_str();
  verify->add_flag("--details", flag, "full report");
  common(verify, true);
  verify->callback([&] { action = [&] { return cmd_verify(ctx, path, samples, points, flag); }; });

  auto* psi_eps = app.add_subcommand("psi-eps", "numeric Mellin integral of the flat-space wavefunction");
  psi_eps->add_option("graph", path)->required();
  psi_eps->add_option("--at", at)->required();
  psi_eps->add_option("--eps", eps, "one exponent per vertex, comma separated")->required();
  psi_eps->add_option("--method", method, "auto, tensor or mc")->capture_default_str();
  psi_eps->add_flag("--continued", flag, "continue each exponent into (-2,-1)");
  psi_eps->add_option("--samples", samples)->capture_default_str();
  psi_eps->add_option("--tolerance", tolerance)->capture_default_str();
  common(psi_eps, true);
  psi_eps->callback([&] {
    action = [&] { return cmd_psi_eps(ctx, path, at, eps, method, flag, samples, tolerance); };
  });

  auto* forms = app.add_subcommand("linear-forms", "distinct linear forms of connected subgraphs");
  forms->add_option("graph", path)->required();
  common(forms, false);
  forms->callback([&] { action = [&] { return cmd_linear_forms(ctx, path); }; });

  auto* orient = app.add_subcommand("orientations", "oriented spanning subgraphs in enumeration order");
  orient->add_option("graph", path)->required();
  common(orient, false);
  orient->callback([&] { action = [&] { return cmd_orientations(ctx, path); }; });

  auto* mellin = app.add_subcommand("mellin", "algebraic Mellin transform of operators");
  mellin->add_option("operators", path, "operator set JSON file")->required();
  mellin->add_option("--op", names, "operator names (default: all)");
  common(mellin, false);
  mellin->callback([&] { action = [&] { return cmd_mellin(ctx, path, names); }; });

  auto* ann_check = app.add_subcommand("ann-check", "apply operators to a rational function");
  ann_check->add_option("operators", path)->required();
  ann_check->add_option("--function", text, "rational function over the set's variables")->required();
  ann_check->add_option("--op", names);
  common(ann_check, false);
  ann_check->callback([&] { action = [&] { return cmd_ann_check(ctx, path, text, names); }; });

  auto* ann_gens = app.add_subcommand("ann-gens", "first-order annihilators of 1/p");
  ann_gens->add_option("polynomial", text)->required();
  ann_gens->add_option("--vars", vars, "all variables, comma separated")->required();
  ann_gens->add_option("--diff", diff, "differential variables")->required();
  common(ann_gens, false);
  ann_gens->callback([&] { action = [&] { return cmd_ann_gens(ctx, text, vars, diff); }; });

  auto* gkz_cmd = app.add_subcommand("gkz", "Cayley configuration and GKZ system of a graph");
  gkz_cmd->add_option("graph", path)->required();
  gkz_cmd->add_option("--kappa", kappa, "comma-separated affine expressions in eps");
  common(gkz_cmd, false);
  gkz_cmd->callback([&] { action = [&] { return cmd_gkz(ctx, path, kappa); }; });

  auto* disc = app.add_subcommand("discriminant", "factors of the Euler discriminant");
  disc->add_option("graph", path)->required();
  disc->add_flag("--physical", flag, "only the physical singularities");
  common(disc, false);
  disc->callback([&] { action = [&] { return cmd_discriminant(ctx, path, flag); }; });

  auto* chambers = app.add_subcommand("chambers", "bounded chambers of the arrangement at a point");
  chambers->add_option("graph", path)->required();
  chambers->add_option("--at", at)->required();
  common(chambers, false);
  chambers->callback([&] { action = [&] { return cmd_chambers(ctx, path, at); }; });

  auto* pfaffian = app.add_subcommand("pfaffian", "connection matrices of a D-ideal");
  pfaffian->add_option("ideal", pa.ideal, "operator set JSON file")->required();
  pfaffian->add_option("--vars", pa.vars, "differential variables (default: from the file)");
  pfaffian->add_option("--basis", pa.basis, "requested basis, e.g. 1,dX1,dX2,dX1*dX2");
  pfaffian->add_option("--max-order", pa.max_order)->capture_default_str();
  pfaffian->add_option("--gauge", pa.gauge, "gauge matrix JSON file");
  pfaffian->add_flag("--transpose", pa.transpose, "apply the transpose of the gauge matrix");
  pfaffian->add_flag("--check-flat", pa.check_flat);
  pfaffian->add_flag("--check-eps", pa.check_eps);
  pfaffian->add_option("--eps-var", pa.eps_var)->capture_default_str();
  common(pfaffian, false);
  pfaffian->callback([&] { action = [&] { return cmd_pfaffian(ctx, pa); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace cosmo::cli
