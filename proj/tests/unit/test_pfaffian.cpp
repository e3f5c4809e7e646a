#include <chrono>
#include <set>

#include "cosmo/arrange/arrange.hpp"
#include "cosmo/cli/parse.hpp"
#include "cosmo/error.hpp"
#include "cosmo/pfaffian/pfaffian.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cosmo;
using namespace cosmo::pf;
using testsupport::read_file;

namespace {

struct TwoSite {
  cli::OperatorSet ops;
  std::vector<ops::WeylOp> ideal;
  int eps = 0;
};

const TwoSite& two_site() {
  static const TwoSite t = [] {
    TwoSite s{cli::parse_operator_set(read_file("data/fixtures/two_site_ideal.json")), {}, 0};
    s.ideal = {s.ops.at("D1") + s.ops.at("D3"), s.ops.at("D2") + s.ops.at("D3"), s.ops.at("H")};
    s.eps = s.ops.context.table->index("eps");
    return s;
  }();
  return t;
}

const std::vector<DMono> kRequestedBasis{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};

const PfaffianSystem& two_site_system() {
  static const PfaffianSystem p = derive_pfaffian(two_site().ideal, {4, kRequestedBasis});
  return p;
}

std::set<std::string> rendered(const std::vector<MPoly>& fs, const sym::VarTable& t) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(sym::to_string(f, t));
  return out;
}

ops::WeylContext one_var(const std::string& extra = "") {
  std::vector<std::string> names{"x"};
  if (!extra.empty()) names.push_back(extra);
  return ops::WeylContext::make(sym::make_table(names), {"x"});
}

}  // namespace

TEST_CASE("one-variable ideals") {
  auto ctx = one_var();
  auto p = derive_pfaffian({ops::WeylOp::derivative(ctx, 0) - ops::WeylOp::scalar(ctx, 1)});
  REQUIRE(p.rank() == 1);
  CHECK(p.matrices[0](0, 0) == RatFun(1));
  CHECK(check_flat(p));

  auto ectx = one_var("eps");
  RatFun eps(MPoly::variable(1));
  auto euler = ops::WeylOp::variable(ectx, 0) * ops::WeylOp::derivative(ectx, 0) - ops::WeylOp::scalar(ectx, eps);
  auto q = derive_pfaffian({euler});
  REQUIRE(q.rank() == 1);
  CHECK(q.matrices[0](0, 0) == eps / RatFun(MPoly::variable(0)));
  CHECK(rendered(singular_locus(q), *ectx.table) == std::set<std::string>{"x"});
  CHECK(eps_factorized(q, 1));

  // d^2 - 1 has rank 2 with the companion matrix
  auto second = ops::WeylOp::derivative(ctx, 0, 2) - ops::WeylOp::scalar(ctx, 1);
  auto s = derive_pfaffian({second});
  CHECK(s.basis == std::vector<DMono>{{0}, {1}});
  CHECK(s.matrices[0] == FracMatrix::from_rows({{0, 1}, {1, 0}}));
}

TEST_CASE("derivation failures") {
  auto ctx = ops::WeylContext::make(sym::make_table({"x", "y"}), {"x", "y"});
  // d_x alone leaves every power of d_y standard
  try {
    derive_pfaffian({ops::WeylOp::derivative(ctx, 0)}, {3, {}});
    FAIL("expected RankNotDetermined");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankNotDetermined);
  }
  CHECK_THROWS_AS(derive_pfaffian({ops::WeylOp(ctx)}), Error);
  CHECK_THROWS_AS(derive_pfaffian({}), Error);
  auto sys = {ops::WeylOp::derivative(ctx, 0) - ops::WeylOp::scalar(ctx, 1),
              ops::WeylOp::derivative(ctx, 1, 2) - ops::WeylOp::scalar(ctx, 1)};
  // d_x is not independent of 1 here
  try {
    derive_pfaffian(sys, {4, {{0, 0}, {1, 0}}});
    FAIL("expected NotSolvable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSolvable);
  }
  auto ok = derive_pfaffian(sys, {4, {{0, 0}, {0, 1}}});
  CHECK(ok.rank() == 2);
  CHECK(check_flat(ok));
}

TEST_CASE("flatness predicate") {
  auto ctx = ops::WeylContext::make(sym::make_table({"x1", "x2"}), {"x1", "x2"});
  PfaffianSystem bad{ctx, {{0, 0}}, {FracMatrix::from_rows({{0}}), FracMatrix::from_rows({{MPoly::variable(0)}})}};
  CHECK_FALSE(check_flat(bad));
  PfaffianSystem single{one_var(), {{0}}, {FracMatrix::from_rows({{MPoly::variable(0)}})}};
  CHECK(check_flat(single));
}

TEST_CASE("2-site ideal: rank, basis, flatness, singular locus") {
  auto start = std::chrono::steady_clock::now();
  const auto& p = two_site_system();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("2-site derivation took " << secs << " s");
  CHECK(p.rank() == 4);
  CHECK(p.basis == kRequestedBasis);
  CHECK(check_flat(p));
  const auto& table = *two_site().ops.context.table;
  CHECK(rendered(singular_locus(p), table) == std::set<std::string>{"Y", "X1+X2", "X1+Y", "X1-Y", "X2+Y", "X2-Y"});

  // same factor set as the Euler discriminant of the 2-site graph
  auto g = testsupport::load_graph("2site");
  CHECK(rendered(singular_locus(p), table) == rendered(arr::euler_discriminant(g), *g.table()));

  // first row of M_X1 is the unit vector picking dX1
  CHECK(p.matrices[0](0, 1) == RatFun(1));
  CHECK(p.matrices[0](0, 0).is_zero());
}

TEST_CASE("2-site staircase is stable in the prolongation bound") {
  auto staircase = derive_pfaffian(two_site().ideal, {3, {}});
  CHECK(staircase.rank() == 4);
  CHECK(check_flat(staircase));
  for (int k : {4, 5}) {
    auto again = derive_pfaffian(two_site().ideal, {k, {}});
    CHECK(again.basis == staircase.basis);
    CHECK(again.matrices == staircase.matrices);
  }
  // the graded-lex staircase differs from the requested basis but spans the same space
  CHECK(staircase.basis != kRequestedBasis);
}

TEST_CASE("gauge transformations") {
  const auto& p = two_site_system();
  CHECK(gauge_transform(p, FracMatrix::identity(4)).matrices == p.matrices);

  const auto& table = *two_site().ops.context.table;
  RatFun x1(MPoly::variable(0)), y(MPoly::variable(2)), eps(MPoly::variable(two_site().eps));
  FracMatrix g1 = FracMatrix::identity(4);
  g1(0, 2) = x1;
  g1(3, 1) = eps / y;
  FracMatrix g2 = FracMatrix::identity(4).scaled(x1 + y);
  g2(1, 0) = RatFun(3);
  CHECK(gauge_transform(gauge_transform(p, g1), g2).matrices == gauge_transform(p, g2 * g1).matrices);
  CHECK(gauge_transform(gauge_transform(p, g1), sym::frac_inverse(g1)).matrices == p.matrices);

  FracMatrix singular = FracMatrix::identity(4);
  singular(1, 1) = RatFun(0);
  try {
    gauge_transform(p, singular);
    FAIL("expected SingularGauge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularGauge);
  }
  CHECK_THROWS_AS(gauge_transform(p, FracMatrix::identity(3)), Error);
  (void)table;
}

TEST_CASE("canonical-form gauge puts the 2-site system in eps-factorized form") {
  const auto& p = two_site_system();
  const auto& table = *two_site().ops.context.table;
  const int e = two_site().eps;
  FracMatrix stored = cli::parse_matrix(read_file("data/fixtures/two_site_gauge.json"), table);
  CHECK_FALSE(eps_factorized(p, e));

  // the matrix is displayed transposed; only the transpose factorizes
  auto gauged = gauge_transform(p, stored.transpose());
  CHECK(eps_factorized(gauged, e));
  CHECK_FALSE(eps_factorized(gauge_transform(p, stored), e));
  CHECK(check_flat(gauged));

  // e/eps at two eps values agrees
  for (const auto& m : gauged.matrices) {
    auto reduced = m.scaled(RatFun(MPoly::variable(e)).inverse());
    CHECK(reduced.substitute(e, RatFun(1)) == reduced.substitute(e, RatFun(sym::Rational(2, 7))));
  }

  // after the gauge Y drops out of the denominators; the rest survives
  auto after = rendered(singular_locus(gauged), table);
  CHECK(after == std::set<std::string>{"X1+X2", "X1+Y", "X1-Y", "X2+Y", "X2-Y"});
}
