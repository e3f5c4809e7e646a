#include "cosmo/pfaffian/pfaffian.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "cosmo/error.hpp"
#include "cosmo/symcore/gcd.hpp"

namespace cosmo::pf {

namespace {

int degree(const DMono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Graded lex, larger monomials first.
struct Descending {
  bool operator()(const DMono& a, const DMono& b) const {
    int da = degree(a), db = degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

// Operator sum c_b d^b with coefficients on the left, in the rational Weyl algebra.
using ROp = std::map<DMono, RatFun, Descending>;

void add_to(ROp& op, const DMono& m, const RatFun& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = op.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) op.erase(it);
}

RatFun power_of(int var, int p) {
  RatFun x(MPoly::variable(var, std::abs(p)));
  return p >= 0 ? x : x.inverse();
}

ROp from_weyl(const ops::WeylOp& w) {
  const auto& vars = w.context().vars;
  ROp out;
  for (const auto& [key, c] : w.terms()) {
    RatFun coeff = c;
    for (size_t k = 0; k < vars.size(); ++k) {
      if (key.x[k] != 0) coeff *= power_of(vars[k], key.x[k]);
    }
    add_to(out, key.d, coeff);
  }
  return out;
}

// d_i * op
ROp prolong(const ROp& op, int slot, int var) {
  ROp out;
  for (const auto& [m, c] : op) {
    add_to(out, m, c.derivative(var));
    DMono up = m;
    ++up[static_cast<size_t>(slot)];
    add_to(out, up, c);
  }
  return out;
}

std::vector<DMono> monomials_of_degree(int vars, int d) {
  std::vector<DMono> out;
  DMono m(static_cast<size_t>(vars), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == vars - 1) {
      m[static_cast<size_t>(i)] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[static_cast<size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  if (vars > 0) rec(rec, 0, d);
  return out;
}

// Incremental echelon form over the rational function field. Each stored row
// is monic in its pivot (its largest monomial); normal forms are resolved
// recursively since later pivots may occur in earlier rows.
class Echelon {
 public:
  void insert(ROp row) {
    for (auto it = row.begin(); it != row.end();) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      RatFun c = it->second;
      DMono key = it->first;
      for (const auto& [m, v] : p->second) add_to(row, m, -(c * v));
      it = row.upper_bound(key);
    }
    if (row.empty()) return;
    RatFun lead = row.begin()->second.inverse();
    for (auto& [m, v] : row) v *= lead;
    DMono key = row.begin()->first;
    pivots_.emplace(std::move(key), std::move(row));
    memo_.clear();
  }

  bool is_pivot(const DMono& m) const { return pivots_.count(m) > 0; }

  // m in terms of non-pivot monomials
  const ROp& normal_form(const DMono& m) {
    auto hit = memo_.find(m);
    if (hit != memo_.end()) return hit->second;
    ROp out;
    auto p = pivots_.find(m);
    if (p == pivots_.end()) {
      out.emplace(m, RatFun(1));
    } else {
      for (auto it = std::next(p->second.begin()); it != p->second.end(); ++it) {
        RatFun c = -it->second;
        ROp sub = normal_form(it->first);
        for (const auto& [n, v] : sub) add_to(out, n, c * v);
      }
    }
    return memo_.emplace(m, std::move(out)).first->second;
  }

 private:
  std::map<DMono, ROp, Descending> pivots_;
  std::map<DMono, ROp, Descending> memo_;
};

// Smallest staircase of non-pivots up to some degree that is closed under
// every d_i; empty when none exists below `top`.
std::vector<DMono> closed_staircase(Echelon& e, int vars, int top) {
  std::vector<DMono> basis;
  for (int t = 0; t < top; ++t) {
    for (const auto& m : monomials_of_degree(vars, t)) {
      if (!e.is_pivot(m)) basis.push_back(m);
    }
    bool closed = true;
    for (const auto& b : basis) {
      for (int i = 0; i < vars && closed; ++i) {
        DMono up = b;
        ++up[static_cast<size_t>(i)];
        for (const auto& [n, c] : e.normal_form(up)) {
          if (degree(n) > t) closed = false;
        }
      }
      if (!closed) break;
    }
    if (closed) {
      std::sort(basis.begin(), basis.end(), [](const DMono& a, const DMono& b) { return Descending{}(b, a); });
      return basis;
    }
  }
  return {};
}

std::vector<std::vector<int>> shifts_of_order(int vars, int k) { return monomials_of_degree(vars, k); }

}  // namespace

PfaffianSystem derive_pfaffian(const std::vector<ops::WeylOp>& generators, const DeriveOptions& options) {
  if (generators.empty()) throw Error(ErrorKind::NotSolvable, "no generators");
  const ops::WeylContext& ctx = generators.front().context();
  const int m = static_cast<int>(ctx.vars.size());
  std::vector<ROp> gens;
  int order = 0;
  for (const auto& g : generators) {
    if (!(g.context() == ctx)) throw Error(ErrorKind::VariableMismatch, "generators live in different contexts");
    if (g.is_zero()) throw Error(ErrorKind::NotSolvable, "zero generator");
    gens.push_back(from_weyl(g));
    order = std::max(order, g.order());
  }

  Echelon ech;
  // prolongations by d^g are built by applying one d_i to an order-(k-1) prolongation
  std::map<DMono, std::vector<ROp>> layer;
  layer[DMono(static_cast<size_t>(m), 0)] = gens;
  for (const auto& g : gens) ech.insert(g);

  std::vector<DMono> previous;
  std::vector<DMono> basis;
  for (int k = 1; k <= options.max_order; ++k) {
    std::map<DMono, std::vector<ROp>> next;
    for (const auto& gamma : shifts_of_order(m, k)) {
      // pick the first slot that can be lowered
      int slot = 0;
      while (gamma[static_cast<size_t>(slot)] == 0) ++slot;
      DMono lower = gamma;
      --lower[static_cast<size_t>(slot)];
      auto& out = next[gamma];
      for (const auto& g : layer.at(lower)) {
        out.push_back(prolong(g, slot, ctx.vars[static_cast<size_t>(slot)]));
        ech.insert(out.back());
      }
    }
    layer = std::move(next);
    basis = closed_staircase(ech, m, order + k);
    if (!basis.empty() && basis.size() == previous.size()) break;
    previous = basis;
    basis.clear();
  }
  if (basis.empty()) {
    throw Error(ErrorKind::RankNotDetermined,
                "staircase did not stabilize up to prolongation order " + std::to_string(options.max_order));
  }

  PfaffianSystem out{ctx, basis, {}};
  const int r = static_cast<int>(basis.size());
  std::map<DMono, int> index;
  for (int j = 0; j < r; ++j) index[basis[static_cast<size_t>(j)]] = j;
  auto coordinates = [&](const DMono& mono, FracMatrix& into, int row) {
    for (const auto& [n, c] : ech.normal_form(mono)) into(row, index.at(n)) = c;
  };
  for (int i = 0; i < m; ++i) {
    FracMatrix mat(r, r);
    for (int j = 0; j < r; ++j) {
      DMono up = basis[static_cast<size_t>(j)];
      ++up[static_cast<size_t>(i)];
      coordinates(up, mat, j);
    }
    out.matrices.push_back(std::move(mat));
  }
  if (options.basis.empty()) return out;

  if (static_cast<int>(options.basis.size()) != r) {
    throw Error(ErrorKind::NotSolvable, "requested basis has " + std::to_string(options.basis.size()) +
                                            " elements, the rank is " + std::to_string(r));
  }
  FracMatrix change(r, r);
  for (int j = 0; j < r; ++j) {
    const DMono& want = options.basis[static_cast<size_t>(j)];
    if (static_cast<int>(want.size()) != m) throw Error(ErrorKind::DimensionMismatch, "basis monomial size");
    coordinates(want, change, j);
  }
  if (frac_det(change).is_zero()) throw Error(ErrorKind::NotSolvable, "requested monomials do not form a basis");
  PfaffianSystem moved = gauge_transform(out, change);
  moved.basis = options.basis;
  return moved;
}

PfaffianSystem gauge_transform(const PfaffianSystem& p, const FracMatrix& g) {
  const int r = p.rank();
  if (g.rows() != r || g.cols() != r) throw Error(ErrorKind::DimensionMismatch, "gauge matrix size");
  FracMatrix inv = sym::frac_inverse(g);
  PfaffianSystem out{p.context, p.basis, {}};
  for (size_t i = 0; i < p.matrices.size(); ++i) {
    out.matrices.push_back(g * p.matrices[i] * inv + g.derivative(p.context.vars[i]) * inv);
  }
  return out;
}

bool check_flat(const PfaffianSystem& p) {
  const auto& vars = p.context.vars;
  for (size_t i = 0; i < p.matrices.size(); ++i) {
    for (size_t j = i + 1; j < p.matrices.size(); ++j) {
      const FracMatrix& mi = p.matrices[i];
      const FracMatrix& mj = p.matrices[j];
      if (!(mj.derivative(vars[i]) + mj * mi == mi.derivative(vars[j]) + mi * mj)) return false;
    }
  }
  return true;
}

std::vector<MPoly> singular_locus(const PfaffianSystem& p) {
  std::set<MPoly> dens;
  for (const auto& mat : p.matrices) {
    for (int r = 0; r < mat.rows(); ++r) {
      for (int c = 0; c < mat.cols(); ++c) {
        if (!mat(r, c).den().is_constant()) dens.insert(mat(r, c).den());
      }
    }
  }
  auto relevant = [&](const MPoly& f) {
    return std::any_of(p.context.vars.begin(), p.context.vars.end(), [&](int v) { return f.depends_on(v); });
  };
  std::set<MPoly> out;
  for (const auto& d : dens) {
    auto f = sym::factor_linear(d);
    for (const auto& [lin, mult] : f.linear) {
      if (relevant(lin)) out.insert(lin.primitive());
    }
    if (!f.rest.is_constant() && relevant(f.rest)) out.insert(f.rest.primitive());
  }
  return {out.begin(), out.end()};
}

bool eps_factorized(const PfaffianSystem& p, int eps_var) {
  RatFun eps(MPoly::variable(eps_var));
  for (const auto& mat : p.matrices) {
    for (int r = 0; r < mat.rows(); ++r) {
      for (int c = 0; c < mat.cols(); ++c) {
        if ((mat(r, c) / eps).depends_on(eps_var)) return false;
      }
    }
  }
  return true;
}

std::string to_string(const DMono& m, const ops::WeylContext& ctx) {
  std::string out;
  for (size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    const std::string& name = ctx.table->name(ctx.vars[k]);
    bool indexed = name.size() > 1 && name[0] == 'a' &&
                   std::all_of(name.begin() + 1, name.end(), [](unsigned char ch) { return std::isdigit(ch); });
    std::string d = indexed ? "d" + name.substr(1) : "d" + name;
    if (m[k] > 1) d += "^" + std::to_string(m[k]);
    out += (out.empty() ? "" : "*") + d;
  }
  return out.empty() ? "1" : out;
}

std::string render(const PfaffianSystem& p) {
  std::ostringstream out;
  out << "basis:";
  for (size_t j = 0; j < p.basis.size(); ++j) out << (j ? ", " : " ") << to_string(p.basis[j], p.context);
  out << "\n";
  for (size_t i = 0; i < p.matrices.size(); ++i) {
    const auto& mat = p.matrices[i];
    out << "M_" << p.context.table->name(p.context.vars[i]) << " =\n";
    for (int r = 0; r < mat.rows(); ++r) {
      out << "  [";
      for (int c = 0; c < mat.cols(); ++c) out << (c ? ", " : "") << sym::to_string(mat(r, c), *p.context.table);
      out << "]\n";
    }
  }
  return out.str();
}

}  // namespace cosmo::pf
