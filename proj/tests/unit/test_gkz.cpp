#include <algorithm>
#include <set>

#include "cosmo/error.hpp"
#include "cosmo/gkzcayley/gkz.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cosmo;
using namespace cosmo::gkz;
using testsupport::load_graph;

namespace {

std::vector<std::vector<int>> pts(std::initializer_list<std::vector<int>> l) { return l; }

std::vector<Integer> column_combo(const IntMatrix& a, const std::vector<int>& e) {
  std::vector<Integer> v;
  for (int x : e) v.emplace_back(x);
  return a.apply(v);
}

void check_invariants(const CayleyData& d, int n) {
  for (int c = 0; c < d.A.cols(); ++c) {
    int ones = 0;
    for (int r = n; r < d.A.rows(); ++r) ones += d.A(r, c) == 1 ? 1 : 0;
    CHECK(ones == 1);
  }
  for (const auto& b : d.binomials) {
    CHECK(column_combo(d.A, b.plus) == column_combo(d.A, b.minus));
    for (size_t u = 0; u < b.plus.size(); ++u) {
      CHECK(b.plus[u] >= 0);
      CHECK(b.minus[u] >= 0);
      CHECK((b.plus[u] == 0 || b.minus[u] == 0));
    }
  }
}

}  // namespace

TEST_CASE("2-site supports and coefficient substitution") {
  auto g = load_graph("2site");
  auto s = cayley_from_graph(g);
  REQUIRE(s.supports.size() == 3);
  CHECK(s.supports[0].points == pts({{1, 0}, {0, 1}, {0, 0}}));
  CHECK(s.supports[1].points == pts({{1, 0}, {0, 0}}));
  CHECK(s.supports[2].points == pts({{0, 1}, {0, 0}}));
  std::vector<std::string> values;
  for (const auto& v : s.values) values.push_back(sym::to_string(v, *g.table()));
  CHECK(values == std::vector<std::string>{"1", "1", "X1+X2", "1", "X1+Y", "1", "X2+Y"});
}

TEST_CASE("supports of other graphs") {
  auto one = cayley_from_graph(load_graph("1site"));
  REQUIRE(one.supports.size() == 1);
  CHECK(one.supports[0].points == pts({{1}, {0}}));

  // six forms of the 3-site chain; each support lists the subgraph's vertices then 0
  auto three = cayley_from_graph(load_graph("3site"));
  REQUIRE(three.supports.size() == 6);
  std::multiset<size_t> sizes;
  for (const auto& sp : three.supports) {
    sizes.insert(sp.points.size());
    CHECK(sp.points.back() == std::vector<int>{0, 0, 0});
  }
  CHECK(sizes == std::multiset<size_t>{2, 2, 2, 3, 3, 4});
}

TEST_CASE("2-site GKZ system") {
  auto g = load_graph("2site");
  auto s = cayley_from_graph(g);
  auto d = gkz_system(s.supports, default_kappa(2, 3));
  CHECK(d.A == IntMatrix::from_rows({{1, 0, 0, 1, 0, 0, 0},
                                     {0, 1, 0, 0, 0, 1, 0},
                                     {1, 1, 1, 0, 0, 0, 0},
                                     {0, 0, 0, 1, 1, 0, 0},
                                     {0, 0, 0, 0, 0, 1, 1}}));
  std::set<std::string> binomials;
  for (const auto& b : d.binomials) {
    auto flipped = Binomial{b.minus, b.plus};
    // compare up to the overall sign of the binomial
    binomials.insert(std::min(to_string(b), to_string(flipped)));
  }
  CHECK(binomials == std::set<std::string>{"d1*d5 - d3*d4", "d2*d7 - d3*d6"});
  std::vector<std::string> euler;
  for (const auto& e : d.euler) euler.push_back(to_string(e));
  CHECK(euler == std::vector<std::string>{"theta1 + theta4 + (eps+1)", "theta2 + theta6 + (eps+1)",
                                          "theta1 + theta2 + theta3 + 1", "theta4 + theta5 + 1",
                                          "theta6 + theta7 + 1"});
  CHECK(to_string(d.kappa[0]) == "-(eps+1)");
  CHECK(to_string(d.kappa[4]) == "-1");
  check_invariants(d, 2);
  CHECK(render(d, &s, g.table().get()).find("c7 = X2+Y") != std::string::npos);
}

TEST_CASE("GKZ systems of larger graphs and degenerate inputs") {
  for (const char* name : {"3site", "bubble", "star4", "chain4"}) {
    auto g = load_graph(name);
    auto s = cayley_from_graph(g);
    auto d = gkz_system(s.supports, default_kappa(g.n(), static_cast<int>(s.supports.size())));
    check_invariants(d, g.n());
    // rank-nullity: A has full row rank here
    std::vector<std::vector<Rational>> rows;
    for (int r = 0; r < d.A.rows(); ++r) {
      rows.emplace_back();
      for (int c = 0; c < d.A.cols(); ++c) rows.back().emplace_back(d.A(r, c));
    }
    CHECK(static_cast<int>(d.binomials.size()) == d.A.cols() - sym::rational_rank(rows));
  }

  // a single support: kernel rank is its size minus rank(A)
  Support square{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  auto d = gkz_system({square}, std::vector<EpsAffine>(3, EpsAffine{0, 0}));
  CHECK(d.binomials.size() == 1);
  CHECK(to_string(d.binomials[0]) == "d1*d4 - d2*d3");
  // kappa = 0 leaves homogeneous Euler operators
  CHECK(to_string(d.euler[0]) == "theta2 + theta4");
  CHECK(to_string(d.euler[2]) == "theta1 + theta2 + theta3 + theta4");

  try {
    gkz_system({square}, default_kappa(2, 2));
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
  CHECK(to_string(EpsAffine{Rational(1, 2), 2}) == "(2*eps+1/2)");
  CHECK(to_string(EpsAffine{0, -1}) == "-eps");
}
