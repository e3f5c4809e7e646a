#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "cosmo/arrange/arrange.hpp"
#include "cosmo/error.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cosmo;
using namespace cosmo::arr;
using testsupport::load_graph;

namespace {

std::set<std::string> rendered(const std::vector<MPoly>& factors, const graph::KinGraph& g) {
  std::set<std::string> out;
  for (const auto& f : factors) out.insert(sym::to_string(f, *g.table()));
  return out;
}

bool subset(const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
  return std::all_of(a.begin(), a.end(), [&](const MPoly& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

std::vector<Rational> values(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("shifted forms") {
  auto g = load_graph("2site");
  std::vector<std::string> s;
  for (const auto& f : shifted_forms(g)) s.push_back(to_string(f, g));
  CHECK(s == std::vector<std::string>{"a1+a2+X1+X2", "a1+X1+Y", "a2+X2+Y"});

  auto g3 = load_graph("3site");
  auto forms = shifted_forms(g3);
  CHECK(forms.size() == 6);
  bool found = false;
  for (const auto& f : forms) {
    if (sym::to_string(f.constant, *g3.table()) == "X1+Y12") {
      found = true;
      CHECK(f.alpha == std::vector<int>{1, 0, 0});
    }
  }
  CHECK(found);
  CHECK(shifted_forms(load_graph("bubble")).size() == 5);

  auto m = coefficient_matrix(g);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 6);
  CHECK(m(2, 3) == sym::RatFun(forms.empty() ? MPoly() : shifted_forms(g)[0].constant));
  CHECK(m(0, 0) == sym::RatFun(1));
}

TEST_CASE("Euler discriminant of small graphs") {
  auto g = load_graph("2site");
  CHECK(rendered(euler_discriminant(g), g) == std::set<std::string>{"X1+X2", "X1+Y", "X1-Y", "X2+Y", "X2-Y", "Y"});
  auto one = load_graph("1site");
  CHECK(rendered(euler_discriminant(one), one) == std::set<std::string>{"X1"});
  CHECK(rendered(physical_singularities(one), one) == std::set<std::string>{"X1"});
  CHECK(normalize_factor(-2 * MPoly::variable(0) + 4 * MPoly::variable(1)) == MPoly::variable(0) - 2 * MPoly::variable(1));
}

TEST_CASE("physical singularities of the 3-site chain") {
  auto g = load_graph("3site");
  auto phys = physical_singularities(g);
  CHECK(rendered(phys, g) == std::set<std::string>{"X1+Y12", "X2+Y12+Y23", "X3+Y23", "X1+X2+X3", "X1+X2+Y23",
                                                    "X2+X3+Y12", "X1-Y12", "X2+Y12-Y23", "X2-Y12+Y23",
                                                    "X2-Y12-Y23", "X1+X2-Y23", "X2+X3-Y12", "X3-Y23"});
  auto disc = euler_discriminant(g);
  CHECK(subset(phys, disc));
  CHECK(disc.size() > phys.size());
}

TEST_CASE("2-site physical singularities from its time-ordered terms") {
  // every term pairs X1+X2 with one of X1+Y, X2+Y, or pairs X1+Y with X2+Y;
  // the minors of those three 3x5 matrices never produce Y
  auto g = load_graph("2site");
  CHECK(rendered(physical_singularities(g), g) == std::set<std::string>{"X1+X2", "X1+Y", "X1-Y", "X2+Y", "X2-Y"});
}

TEST_CASE("singularity factors are linear and physical ones are discriminant factors") {
  for (const char* name : {"1site", "2site", "3site", "bubble", "star4", "chain4"}) {
    INFO(name);
    auto g = load_graph(name);
    auto disc = euler_discriminant(g);
    auto phys = physical_singularities(g);
    CHECK(subset(phys, disc));
    for (const auto& f : disc) CHECK(f.degree() == 1);
  }
}

TEST_CASE("bounded chambers") {
  auto g = load_graph("2site");
  auto c = bounded_chambers(g, values({2, 2, 1}));
  CHECK(c.bounded == 4);
  // five lines with two parallel pairs: chi(t) = t^2 - 5t + 8
  CHECK(c.characteristic == std::vector<long>{8, -5, 1});
  CHECK(c.regions == 14);
  CHECK(bounded_chambers(load_graph("1site"), values({1})).bounded == 1);
  try {
    bounded_chambers(g, values({0, 2, 0}));
    FAIL("expected a degenerate point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePoint);
  }
  // X1 = Y makes two triangles collapse
  CHECK_THROWS_AS(bounded_chambers(g, values({1, 3, 1})), Error);
}

TEST_CASE("chamber count is constant where all X exceed the sum of |Y|") {
  for (const char* name : {"2site", "3site", "bubble"}) {
    INFO(name);
    auto g = load_graph(name);
    std::set<long> counts;
    std::mt19937_64 rng(500);
    std::uniform_int_distribution<long> num(-1000, 1000);
    for (int trial = 0; trial < 5; ++trial) {
      // Y anywhere, every X above the sum of |Y|; odd denominators keep the point generic
      std::vector<Rational> p(static_cast<size_t>(g.table()->size()));
      Rational ysum = 0;
      for (int e = 0; e < g.edge_count(); ++e) {
        Rational y(num(rng), 997);
        y.canonicalize();
        p[static_cast<size_t>(g.y_var(e))] = y;
        ysum += abs(y);
      }
      for (int v = 1; v <= g.n(); ++v) {
        Rational x(std::labs(num(rng)) + 1, 1009);
        x.canonicalize();
        p[static_cast<size_t>(g.x_var(v))] = ysum + x;
      }
      counts.insert(bounded_chambers(g, p).bounded);
    }
    CHECK(counts.size() == 1);
  }
}
