#include <cmath>
#include <numbers>

#include "cosmo/error.hpp"
#include "cosmo/wavefun/wavefun.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cosmo;
using namespace cosmo::wave;
using sym::MPoly;
using testsupport::load_graph;

namespace {

KinPoint point(const KinGraph& g, std::vector<long> v) {
  std::vector<Rational> q;
  for (long x : v) q.emplace_back(x);
  return KinPoint::make(g, q);
}

double closed_value(const KinGraph& g, const KinPoint& p) {
  return closed_form(g)->value.evaluate(std::span<const Rational>(p.values)).get_d();
}

}  // namespace

TEST_CASE("2-site time integral reproduces 1/18") {
  // By hand: with s = t1 - t2 the |t1-t2| factor integrates to
  // 1/((X1+X2)(X1+Y)) + 1/((X1+X2)(X2+Y)), the second factor to 1/((X1+Y)(X2+Y)).
  auto g = load_graph("2site");
  auto est = psi_flat_numeric(g, point(g, {2, 2, 1}), {});
  CHECK(est.samples == 1'000'000);
  CHECK(std::abs(est.value - 1.0 / 18.0) < 3 * est.error);
  CHECK(est.error < 1e-3);
}

TEST_CASE("sampling does not depend on the worker count") {
  auto g = load_graph("3site");
  auto p = point(g, {3, 4, 5, 1, 2});
  SamplingOptions one{200'000, 7, 1}, four{200'000, 7, 4};
  auto a = psi_flat_numeric(g, p, one);
  auto b = psi_flat_numeric(g, p, four);
  CHECK(a.value == b.value);
  CHECK(a.error == b.error);
}

TEST_CASE("3-site numeric value matches the closed form") {
  auto g = load_graph("3site");
  auto p = point(g, {3, 4, 5, 1, 2});
  auto est = psi_flat_numeric(g, p, {});
  CHECK(std::abs(est.value - closed_value(g, p)) < 3 * est.error);
}

TEST_CASE("closed forms equal the summed decomposition") {
  for (const char* name : {"2site", "3site", "bubble"}) {
    auto g = load_graph(name);
    auto cf = closed_form(g);
    REQUIRE(cf.has_value());
    CHECK(psi_flat_conjectured(g) == cf->value);
  }
  auto g2 = load_graph("2site");
  CHECK(sym::to_string(psi_flat_conjectured(g2), *g2.table()) == "(2*Y)/((X1+X2)*(X1+Y)*(X2+Y))");
  CHECK_FALSE(closed_form(load_graph("star4")).has_value());
  CHECK_FALSE(closed_form(load_graph("chain4")).has_value());
}

TEST_CASE("2-site wavefunction is symmetric in X1 and X2") {
  auto g = load_graph("2site");
  auto f = psi_flat_conjectured(g);
  int swap[] = {1, 0, 2};
  CHECK(f.permute(swap) == f);
}

TEST_CASE("denominator divides the product of the distinct linear forms") {
  for (const char* name : {"1site", "2site", "3site", "bubble", "star4", "chain4"}) {
    auto g = load_graph(name);
    MPoly prod(1);
    for (const auto& f : graph::distinct_linear_forms(g)) prod *= f;
    MPoly q;
    CHECK(prod.divide_exact(psi_flat_conjectured(g).den(), q));
  }
}

TEST_CASE("conjecture agrees with the time integral on star and chain graphs") {
  for (const char* name : {"star4", "chain4", "bubble"}) {
    auto g = load_graph(name);
    auto conj = psi_flat_conjectured(g);
    for (int k = 0; k < 2; ++k) {
      auto p = random_point(g, 100 + static_cast<std::uint64_t>(k));
      auto est = psi_flat_numeric(g, p, {300'000, 11 + static_cast<std::uint64_t>(k), 0});
      double exact = conj.evaluate(std::span<const Rational>(p.values)).get_d();
      CHECK(std::abs(est.value - exact) < 3 * est.error);
    }
  }
}

TEST_CASE("star wavefunction at a rational point") {
  // exact time integral: integrate each leaf against the centre time, then
  // the centre, all in exact arithmetic
  auto g = load_graph("star4");
  std::vector<Rational> p{Rational(5), Rational(9, 4), Rational(5), Rational(3, 2), Rational(2), Rational(1), Rational(2)};
  Rational exact(4483328, 37581448905);
  CHECK(psi_flat_conjectured(g).evaluate(std::span<const Rational>(p)) == exact);

  // the net-degree reading of positivity overcounts orderings at the centre
  sym::RatFun literal;
  for (const auto& t : graph::pf_decomposition(g, graph::PositivityRule::NetDegree)) literal += graph::term_value(t);
  CHECK(literal.evaluate(std::span<const Rational>(p)) != exact);
}

TEST_CASE("kinematic points are validated") {
  auto g = load_graph("2site");
  CHECK_THROWS_AS(point(g, {0, 2, 1}), Error);
  try {
    point(g, {2, 2, -1});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositivePoint);
  }
  auto p = KinPoint::parse(g, "X1=2,X2=3/2,Y=0.25");
  CHECK(p.values[1] == Rational(3, 2));
  CHECK(p.values[2] == Rational(1, 4));
  CHECK_THROWS(KinPoint::parse(g, "X1=2,X2=2"));
  CHECK_THROWS(KinPoint::parse(g, "X1=2,X2=2,Z=1"));
}

TEST_CASE("verify reports") {
  auto r = verify_conjecture(load_graph("3site"), "3site");
  CHECK(r.pass);
  CHECK(r.mode == "symbolic");
  CHECK(r.terms.size() == 10);
  CHECK(verify_conjecture(load_graph("bubble"), "bubble").summary() == "PASS (symbolic, 7 terms)");
  auto star = verify_conjecture(load_graph("star4"), "star4", {200'000, 3, 0}, 5);
  CHECK(star.mode == "numeric");
  CHECK(star.points.size() == 5);
  CHECK(star.pass);
  CHECK(star.to_json().find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("one-dimensional Mellin integrals against the Beta function") {
  // int_0^inf a^s/(a+c)^2 da = c^(s-1) * pi s / sin(pi s), continued in s
  Rational c(3);
  auto f = sym::RatFun::quotient(1, (MPoly::variable(0) + MPoly(c)).pow(2));
  for (double s : {-0.5, 0.3, 0.75}) {
    double exact = std::pow(3.0, s - 1) * std::numbers::pi * s / std::sin(std::numbers::pi * s);
    auto est = mellin_numeric(f, 1, {s});
    CHECK(std::abs(est.value - exact) < 1e-9);
    CHECK(std::abs(est.value - exact) <= 3 * est.error + 1e-15);
  }
  for (double s : {-1.5, -1.25, 0.3}) {
    double exact = std::pow(3.0, s - 1) * std::numbers::pi * s / std::sin(std::numbers::pi * s);
    auto est = mellin_continued(f, 1, {s});
    CHECK(std::abs(est.value - exact) < 1e-7 * std::abs(exact));
    CHECK(std::abs(est.value - exact) <= 3 * est.error);
  }
  CHECK_THROWS_AS(mellin_numeric(f, 1, {-1.5}), Error);
  CHECK_THROWS_AS(mellin_numeric(f, 1, {1.0}), Error);
}

TEST_CASE("psi_eps preconditions and consistency") {
  auto g = load_graph("2site");
  auto p = point(g, {2, 2, 1});
  try {
    psi_eps_numeric(g, p, {-1, -1});
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentParameters);
  }
  // total degree drop is 3, so the exponents must satisfy e1 + e2 + 2 < 3
  CHECK_THROWS_AS(psi_eps_numeric(g, p, {0.6, 0.6}), Error);

  auto quad = psi_eps_numeric(g, p, {-0.5, -0.5});
  CHECK(std::isfinite(quad.value));
  CHECK(quad.value > 0);
  auto cont = psi_eps_continued(g, p, {-0.5, -0.5});
  CHECK(std::abs(quad.value - cont.value) < 3 * (quad.error + cont.error));

  // Monte Carlo on the unit cube as an independent estimate, invariant under doubling
  MellinOptions mc;
  mc.method = QuadratureMethod::MonteCarlo;
  mc.sampling = {400'000, 5, 0};
  auto a = psi_eps_numeric(g, p, {-0.5, -0.5}, mc);
  mc.sampling = {800'000, 9, 0};
  auto b = psi_eps_numeric(g, p, {-0.5, -0.5}, mc);
  CHECK(std::abs(a.value - quad.value) < 3 * a.error + quad.error);
  CHECK(std::abs(a.value - b.value) < 3 * std::hypot(a.error, b.error));
}

TEST_CASE("psi_eps on the 3-site chain") {
  auto g = load_graph("3site");
  auto p = point(g, {3, 4, 5, 1, 2});
  auto quad = psi_eps_numeric(g, p, {-0.5, -0.5, -0.5});
  MellinOptions mc;
  mc.method = QuadratureMethod::MonteCarlo;
  mc.sampling = {400'000, 5, 0};
  auto est = psi_eps_numeric(g, p, {-0.5, -0.5, -0.5}, mc);
  CHECK(std::abs(est.value - quad.value) < 3 * est.error + quad.error);
}
