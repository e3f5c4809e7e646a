#include "cosmo/gkzcayley/gkz.hpp"

#include <sstream>

#include "cosmo/error.hpp"

namespace cosmo::gkz {

GraphSupports cayley_from_graph(const graph::KinGraph& g) {
  GraphSupports out;
  out.n = g.n();
  for (const MPoly& form : graph::distinct_linear_forms(g)) {
    Support s;
    for (int v = 1; v <= g.n(); ++v) {
      if (!form.depends_on(g.x_var(v))) continue;
      std::vector<int> e(static_cast<size_t>(g.n()), 0);
      e[static_cast<size_t>(v - 1)] = 1;
      s.points.push_back(e);
      out.values.emplace_back(1);
    }
    s.points.emplace_back(static_cast<size_t>(g.n()), 0);
    out.values.push_back(form);
    out.supports.push_back(std::move(s));
  }
  return out;
}

std::vector<EpsAffine> default_kappa(int n, int k) {
  std::vector<EpsAffine> kappa(static_cast<size_t>(n), EpsAffine{-1, -1});
  kappa.resize(static_cast<size_t>(n + k), EpsAffine{-1, 0});
  return kappa;
}

CayleyData gkz_system(const std::vector<Support>& supports, const std::vector<EpsAffine>& kappa) {
  if (supports.empty()) throw Error(ErrorKind::DimensionMismatch, "no supports");
  const int k = static_cast<int>(supports.size());
  const int n = static_cast<int>(supports.front().points.front().size());
  int cols = 0;
  for (const auto& s : supports) {
    if (s.points.empty()) throw Error(ErrorKind::DimensionMismatch, "empty support");
    for (const auto& p : s.points) {
      if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::DimensionMismatch, "supports live in different dimensions");
    }
    cols += static_cast<int>(s.points.size());
  }
  if (static_cast<int>(kappa.size()) != n + k) {
    throw Error(ErrorKind::DimensionMismatch, "kappa needs " + std::to_string(n + k) + " entries");
  }

  CayleyData out;
  out.A = IntMatrix(n + k, cols);
  int c = 0;
  for (int j = 0; j < k; ++j) {
    for (const auto& p : supports[static_cast<size_t>(j)].points) {
      for (int i = 0; i < n; ++i) out.A(i, c) = p[static_cast<size_t>(i)];
      out.A(n + j, c) = 1;
      ++c;
    }
  }
  out.kappa = kappa;
  for (const auto& v : sym::int_kernel_basis(out.A)) {
    Binomial b{std::vector<int>(static_cast<size_t>(cols), 0), std::vector<int>(static_cast<size_t>(cols), 0)};
    for (size_t u = 0; u < v.size(); ++u) {
      if (!v[u].fits_sint_p()) throw Error(ErrorKind::Overflow, "kernel entry too large");
      long e = v[u].get_si();
      (e > 0 ? b.plus : b.minus)[u] = static_cast<int>(e > 0 ? e : -e);
    }
    out.binomials.push_back(std::move(b));
  }
  for (int r = 0; r < n + k; ++r) {
    EulerGenerator g;
    for (int u = 0; u < cols; ++u) g.theta.push_back(static_cast<int>(out.A(r, u).get_si()));
    const auto& kr = kappa[static_cast<size_t>(r)];
    g.constant = {-kr.constant, -kr.eps};
    out.euler.push_back(std::move(g));
  }
  return out;
}

namespace {

std::string scaled(const Rational& q, const std::string& name) {
  if (q == 1) return name;
  if (q == -1) return "-" + name;
  return sym::to_string(q) + "*" + name;
}

std::string d_monomial(const std::vector<int>& e) {
  std::string out;
  for (size_t u = 0; u < e.size(); ++u) {
    for (int t = 0; t < e[u]; ++t) out += (out.empty() ? "" : "*") + ("d" + std::to_string(u + 1));
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string to_string(const EpsAffine& e) {
  if (e.eps == 0) return sym::to_string(e.constant);
  // factor out the sign of eps so -(eps+1) reads as displayed
  bool negative = e.eps < 0;
  Rational b = negative ? Rational(-e.eps) : e.eps;
  Rational a = negative ? Rational(-e.constant) : e.constant;
  std::string inner = scaled(b, "eps");
  if (a > 0) inner += "+" + sym::to_string(a);
  if (a < 0) inner += sym::to_string(a);
  if (a == 0 && !negative) return inner;
  if (a == 0) return "-" + inner;
  return negative ? "-(" + inner + ")" : "(" + inner + ")";
}

std::string to_string(const Binomial& b) { return d_monomial(b.plus) + " - " + d_monomial(b.minus); }

std::string to_string(const EulerGenerator& g) {
  std::string out;
  for (size_t u = 0; u < g.theta.size(); ++u) {
    int c = g.theta[u];
    if (c == 0) continue;
    std::string t = scaled(Rational(c), "theta" + std::to_string(u + 1));
    if (out.empty()) {
      out = t;
    } else {
      out += t[0] == '-' ? " - " + t.substr(1) : " + " + t;
    }
  }
  if (g.constant == EpsAffine{0, 0}) return out.empty() ? "0" : out;
  std::string k = to_string(g.constant);
  if (out.empty()) return k;
  if (k[0] == '-') return out + " - " + k.substr(1);
  return out + " + " + k;
}

std::string render(const CayleyData& data, const GraphSupports* origin, const sym::VarTable* table) {
  std::ostringstream out;
  out << "A =\n";
  for (int r = 0; r < data.A.rows(); ++r) {
    out << " ";
    for (int c = 0; c < data.A.cols(); ++c) out << " " << data.A(r, c);
    out << "\n";
  }
  out << "kappa = (";
  for (size_t i = 0; i < data.kappa.size(); ++i) out << (i ? ", " : "") << to_string(data.kappa[i]);
  out << ")\n";
  if (origin && table) {
    out << "coefficients:\n";
    for (size_t u = 0; u < origin->values.size(); ++u) {
      out << "  c" << u + 1 << " = " << sym::to_string(origin->values[u], *table) << "\n";
    }
  }
  out << "toric binomials:\n";
  for (const auto& b : data.binomials) out << "  " << to_string(b) << "\n";
  out << "Euler operators:\n";
  for (const auto& g : data.euler) out << "  " << to_string(g) << "\n";
  return out.str();
}

}  // namespace cosmo::gkz
