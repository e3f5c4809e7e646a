#include "cosmo/arrange/arrange.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "cosmo/error.hpp"
#include "cosmo/graphkit/orientation.hpp"
#include "cosmo/parallel.hpp"

namespace cosmo::arr {

using graph::KinGraph;

std::vector<ShiftedForm> shifted_forms(const KinGraph& g) {
  std::vector<ShiftedForm> out;
  for (const MPoly& form : graph::distinct_linear_forms(g)) {
    ShiftedForm f{std::vector<int>(static_cast<size_t>(g.n()), 0), form};
    for (int v = 1; v <= g.n(); ++v) f.alpha[static_cast<size_t>(v - 1)] = form.depends_on(g.x_var(v)) ? 1 : 0;
    out.push_back(std::move(f));
  }
  return out;
}

std::string to_string(const ShiftedForm& f, const KinGraph& g) {
  std::string out;
  for (size_t v = 0; v < f.alpha.size(); ++v) {
    if (f.alpha[v]) out += (out.empty() ? "a" : "+a") + std::to_string(v + 1);
  }
  std::string c = sym::to_string(f.constant, *g.table());
  if (out.empty()) return c;
  return c[0] == '-' ? out + c : out + "+" + c;
}

namespace {

// Columns of [I | T_1 ... T_k] as polynomial vectors of length n+1.
std::vector<std::vector<MPoly>> columns(int n, const std::vector<ShiftedForm>& forms) {
  std::vector<std::vector<MPoly>> cols;
  for (int i = 0; i <= n; ++i) {
    std::vector<MPoly> e(static_cast<size_t>(n + 1));
    e[static_cast<size_t>(i)] = MPoly(1);
    cols.push_back(std::move(e));
  }
  for (const auto& f : forms) {
    std::vector<MPoly> t;
    for (int a : f.alpha) t.emplace_back(static_cast<long>(a));
    t.push_back(f.constant);
    cols.push_back(std::move(t));
  }
  return cols;
}

// Fraction-free (Bareiss) determinant of a polynomial matrix.
MPoly det(std::vector<std::vector<MPoly>> m) {
  const size_t n = m.size();
  MPoly prev(1);
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return MPoly();
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = MPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Normalized nonconstant maximal minors of the given columns.
std::vector<MPoly> minor_factors(const std::vector<std::vector<MPoly>>& cols, int rows) {
  const int total = static_cast<int>(cols.size());
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    subsets.push_back(pick);
    int i = rows - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == total - rows + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < rows; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  std::vector<MPoly> minors(subsets.size());
  parallel_for(static_cast<int>(subsets.size()), [&](int s) {
    std::vector<std::vector<MPoly>> m(static_cast<size_t>(rows), std::vector<MPoly>(static_cast<size_t>(rows)));
    for (int c = 0; c < rows; ++c) {
      const auto& col = cols[static_cast<size_t>(subsets[static_cast<size_t>(s)][static_cast<size_t>(c)])];
      for (int r = 0; r < rows; ++r) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = col[static_cast<size_t>(r)];
    }
    minors[static_cast<size_t>(s)] = det(std::move(m));
  });
  std::set<MPoly> out;
  for (const auto& d : minors) {
    if (d.is_zero() || d.is_constant()) continue;
    out.insert(normalize_factor(d));
  }
  return {out.begin(), out.end()};
}

}  // namespace

sym::FracMatrix coefficient_matrix(const KinGraph& g) {
  auto cols = columns(g.n(), shifted_forms(g));
  sym::FracMatrix m(g.n() + 1, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) {
    for (int r = 0; r <= g.n(); ++r) m(r, static_cast<int>(c)) = cols[c][static_cast<size_t>(r)];
  }
  return m;
}

MPoly normalize_factor(const MPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
  if (p.is_constant()) return MPoly(1);
  return p.primitive();
}

std::vector<MPoly> euler_discriminant(const KinGraph& g) {
  return minor_factors(columns(g.n(), shifted_forms(g)), g.n() + 1);
}

std::vector<MPoly> physical_singularities(const KinGraph& g) {
  auto forms = shifted_forms(g);
  std::set<MPoly> out;
  for (const auto& t : graph::pf_decomposition(g)) {
    if (!t.time_ordered) continue;
    std::vector<ShiftedForm> used;
    for (const MPoly& f : t.forms) {
      auto it = std::find_if(forms.begin(), forms.end(), [&](const ShiftedForm& s) { return s.constant == f; });
      used.push_back(*it);
    }
    for (auto& m : minor_factors(columns(g.n(), used), g.n() + 1)) out.insert(std::move(m));
  }
  return {out.begin(), out.end()};
}

namespace {

using Row = std::vector<Rational>;  // n coefficients, then the constant

int rank_of(const std::vector<Row>& rows, bool augmented) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), augmented ? r.end() : r.end() - 1);
  return m.empty() ? 0 : sym::rational_rank(std::move(m));
}

}  // namespace

ChamberCount bounded_chambers(const KinGraph& g, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != g.table()->size()) {
    throw Error(ErrorKind::DimensionMismatch, "point needs one value per graph variable");
  }
  for (const MPoly& f : euler_discriminant(g)) {
    if (f.evaluate(point) == 0) {
      throw Error(ErrorKind::DegeneratePoint, sym::to_string(f, *g.table()) + " vanishes at the point");
    }
  }
  const int n = g.n();
  std::vector<Row> planes;
  for (const auto& f : shifted_forms(g)) {
    Row r;
    for (int a : f.alpha) r.emplace_back(a);
    r.push_back(f.constant.evaluate(point));
    planes.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    Row r(static_cast<size_t>(n + 1), Rational(0));
    r[static_cast<size_t>(j)] = 1;
    planes.push_back(std::move(r));
  }
  if (planes.size() > 64) throw Error(ErrorKind::Overflow, "too many hyperplanes");
  const int h = static_cast<int>(planes.size());

  // flats keyed by the set of hyperplanes containing them, level by level
  using Mask = std::uint64_t;
  auto rows_of = [&](Mask m) {
    std::vector<Row> rows;
    for (int i = 0; i < h; ++i) {
      if (m >> i & 1U) rows.push_back(planes[static_cast<size_t>(i)]);
    }
    return rows;
  };
  std::map<Mask, int> dim{{0, n}};
  std::map<Mask, long> mobius{{0, 1}};
  std::vector<Mask> level{0};
  while (!level.empty()) {
    std::set<Mask> next;
    for (Mask flat : level) {
      auto rows = rows_of(flat);
      for (int i = 0; i < h; ++i) {
        if (flat >> i & 1U) continue;
        auto cut = rows;
        cut.push_back(planes[static_cast<size_t>(i)]);
        int r = rank_of(cut, false);
        if (rank_of(cut, true) != r) continue;  // parallel, empty intersection
        Mask closure = 0;
        for (int j = 0; j < h; ++j) {
          auto with = cut;
          with.push_back(planes[static_cast<size_t>(j)]);
          if (rank_of(with, true) == r) closure |= Mask{1} << j;
        }
        if (!dim.count(closure)) {
          dim[closure] = n - r;
          next.insert(closure);
        }
      }
    }
    // mu(F) = -sum of mu over the flats strictly containing F
    for (Mask f : next) {
      long sum = 0;
      for (const auto& [other, mu] : mobius) {
        if ((other & f) == other && other != f) sum += mu;
      }
      mobius[f] = -sum;
    }
    level.assign(next.begin(), next.end());
  }

  ChamberCount out;
  out.characteristic.assign(static_cast<size_t>(n + 1), 0);
  for (const auto& [flat, mu] : mobius) out.characteristic[static_cast<size_t>(dim[flat])] += mu;
  long at_one = 0, at_minus_one = 0, sign = 1;
  for (int d = 0; d <= n; ++d) {
    at_one += out.characteristic[static_cast<size_t>(d)];
    at_minus_one += sign * out.characteristic[static_cast<size_t>(d)];
    sign = -sign;
  }
  out.bounded = std::labs(at_one);
  out.regions = std::labs(at_minus_one);
  return out;
}

}  // namespace cosmo::arr
