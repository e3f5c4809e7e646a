#include <cmath>

#include "cosmo/cli/parse.hpp"
#include "cosmo/error.hpp"
#include "cosmo/wavefun/wavefun.hpp"
#include "cosmo/weylshift/weylshift.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cosmo;
using namespace cosmo::ops;
using cli::parse_shift;
using cli::parse_weyl;
using sym::MPoly;

namespace {

cli::OperatorSet annihilator_set() {
  return cli::parse_operator_set(testsupport::read_file("data/fixtures/two_site_annihilator.json"));
}

// 1/(L1 L2 L3) for the two-site chain, over the fixture table
RatFun two_site_inverse(const WeylContext& ctx) {
  const auto& t = *ctx.table;
  auto v = [&](const char* n) { return MPoly::variable(t.index(n)); };
  MPoly l1 = v("a1") + v("a2") + v("X1") + v("X2");
  MPoly l2 = v("a1") + v("X1") + v("Y");
  MPoly l3 = v("a2") + v("X2") + v("Y");
  return RatFun::quotient(1, l1 * l2 * l3);
}

WeylContext single(const char* var, const char* param = nullptr) {
  std::vector<std::string> names{var};
  if (param) names.emplace_back(param);
  return WeylContext::make(sym::make_table(names), {var});
}

}  // namespace

TEST_CASE("Weyl products follow the Leibniz rule") {
  auto ctx = single("x");
  auto x = WeylOp::variable(ctx, 0), d = WeylOp::derivative(ctx, 0), one = WeylOp::scalar(ctx, 1);
  CHECK(d * x == x * d + one);
  CHECK(to_string(d * x) == "x*dx + 1");
  CHECK(to_string(x * d) == "x*dx");
  CHECK(to_string((x * d) * (x * d)) == "x^2*dx^2 + x*dx");
  CHECK(weyl_mul(x, d) == x * d);

  auto two = WeylContext::make(sym::make_table({"x", "y"}), {"x", "y"});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      auto di = WeylOp::derivative(two, i), xj = WeylOp::variable(two, j);
      CHECK(di * xj - xj * di == WeylOp::scalar(two, i == j ? 1 : 0));
    }
  }
  CHECK_THROWS_AS(x * WeylOp::variable(two, 0), Error);
}

TEST_CASE("Laurent products") {
  auto ctx = single("x");
  auto inv = WeylOp::variable(ctx, 0, -1), d = WeylOp::derivative(ctx, 0);
  CHECK(inv.laurent());
  // d x^-1 = x^-1 d - x^-2
  CHECK(to_string(d * inv) == "x^-1*dx - x^-2");
  CHECK(inv * WeylOp::variable(ctx, 0) == WeylOp::scalar(ctx, 1));
}

TEST_CASE("operators act on rational functions") {
  auto ctx = WeylContext::make(sym::make_table({"a1", "c"}), {"a1"});
  MPoly a = MPoly::variable(0) + MPoly::variable(1);
  auto d = WeylOp::derivative(ctx, 0);
  CHECK(weyl_apply(d, RatFun::quotient(1, a)) == RatFun::quotient(-1, a * a));
  // x d on x^3 is 3 x^3
  auto x = WeylOp::variable(ctx, 0);
  RatFun cube = MPoly::variable(0, 3);
  CHECK(weyl_apply(x * d, cube) == 3 * cube);
  CHECK(weyl_apply(WeylOp::variable(ctx, 0, -2), cube) == RatFun(MPoly::variable(0)));
}

TEST_CASE("the four two-site operators annihilate 1/(L1 L2 L3)") {
  auto set = annihilator_set();
  REQUIRE(set.operators.size() == 4);
  RatFun f = two_site_inverse(set.context);
  for (const auto& [name, op] : set.operators) {
    INFO(name);
    CHECK(weyl_apply(op, f).is_zero());
  }
  // so does any combination with rational coefficients
  const auto& t = *set.context.table;
  RatFun c1 = RatFun::quotient(MPoly::variable(t.index("X1")), MPoly::variable(t.index("Y")) + 1);
  RatFun c2 = RatFun(MPoly::variable(t.index("X2"), 2)) - 3;
  WeylOp mix = c1 * set.at("P1") + c2 * set.at("P3") - set.at("P4");
  CHECK(weyl_apply(mix, f).is_zero());
  // a mistyped coefficient is caught
  WeylOp broken = set.at("P1") + WeylOp::scalar(set.context, 1);
  CHECK_FALSE(weyl_apply(broken, f).is_zero());
}

TEST_CASE("annihilator generators") {
  auto ctx = single("a1");
  auto gens = ann_generators(ctx, MPoly::variable(0));
  REQUIRE(gens.size() == 1);
  CHECK(to_string(gens[0]) == "a1*d1 + 1");

  auto two = WeylContext::make(sym::make_table({"a1", "a2"}), {"a1", "a2"});
  gens = ann_generators(two, MPoly::variable(0) * MPoly::variable(1));
  REQUIRE(gens.size() == 2);
  CHECK(to_string(gens[0]) == "a1*a2*d1 + a2");
  CHECK(to_string(gens[1]) == "a1*a2*d2 + a1");

  auto set = annihilator_set();
  RatFun f = two_site_inverse(set.context);
  gens = ann_generators(set.context, f.den());
  CHECK(gens.size() == 2);
  for (const auto& g : gens) CHECK(weyl_apply(g, f).is_zero());
  CHECK_THROWS_AS(ann_generators(ctx, MPoly()), Error);
}

TEST_CASE("Mellin transform of generators") {
  auto ctx = WeylContext::make(sym::make_table({"a1", "a2"}), {"a1", "a2"});
  auto sctx = shift_context_for(ctx);
  CHECK(sctx.table->names() == std::vector<std::string>{"a1", "a2", "e1", "e2"});
  auto d1 = WeylOp::derivative(ctx, 0), a1 = WeylOp::variable(ctx, 0);
  CHECK(mellin(d1) == parse_shift("-(e1-1)*s1^-1", sctx));
  // a theta = a^2 d
  CHECK(mellin(a1 * a1 * d1) == parse_shift("-(e1+1)*s1", sctx));
  CHECK(mellin(a1) == ShiftOp::sigma(sctx, 0));
  CHECK(mellin(WeylOp::variable(ctx, 1, -1)) == ShiftOp::sigma(sctx, 1, -1));
  CHECK(mellin(WeylOp(ctx)).is_zero());
}

TEST_CASE("Mellin images of the two-site operators") {
  auto set = annihilator_set();
  auto sctx = shift_context_for(set.context);
  ShiftOp m1 = mellin(set.at("P1"));
  ShiftOp m23 = mellin(set.at("P2") + set.at("P3"));
  CHECK(m1 == parse_shift("-(e2-1)*((X2+Y)*s1*s2^-1 + s1 + s2 + (X1+X2)*(X2+Y)*s2^-1 + (X1+2*X2+Y))", sctx));
  CHECK(m23 == parse_shift("-(e1-1)*((X1+Y)*s1^-1*s2 + s1 + s2 + (X1+X2)*(X1+Y)*s1^-1 + (2*X1+X2+Y))", sctx));
  CHECK(mellin(set.at("P2")) + mellin(set.at("P3")) == m23);

  // exchanging the two sites maps one onto the other
  const auto& t = *sctx.table;
  std::vector<int> vars(static_cast<size_t>(t.size()));
  for (int i = 0; i < t.size(); ++i) vars[static_cast<size_t>(i)] = i;
  auto swap = [&](const char* a, const char* b) { std::swap(vars[static_cast<size_t>(t.index(a))], vars[static_cast<size_t>(t.index(b))]); };
  swap("X1", "X2");
  swap("a1", "a2");
  swap("e1", "e2");
  std::vector<int> shifts{1, 0};
  CHECK(m1.permute(vars, shifts) == m23);
  CHECK(m23.permute(vars, shifts) == m1);
}

TEST_CASE("shift algebra normal order") {
  auto sctx = ShiftContext{sym::make_table({"X", "e1", "e2"}), {1, 2}};
  auto s1 = ShiftOp::sigma(sctx, 0), e1 = ShiftOp::eps(sctx, 0), e2 = ShiftOp::eps(sctx, 1);
  auto one = ShiftOp::scalar(sctx, 1);
  CHECK(s1 * e1 == (e1 + one) * s1);
  CHECK(s1 * e2 == e2 * s1);
  CHECK(ShiftOp::sigma(sctx, 0, -1) * e1 == (e1 - one) * ShiftOp::sigma(sctx, 0, -1));
  CHECK(parse_shift("s1^-1*e1", sctx) == parse_shift("(e1-1)*s1^-1", sctx));
  CHECK(to_string(parse_shift("s1^-1*e1", sctx)) == "(e1-1)*s1^-1");
  CHECK(s1 * ShiftOp::sigma(sctx, 0, -1) == one);
}

TEST_CASE("numeric application of shift operators") {
  auto sctx = ShiftContext{sym::make_table({"X", "e1"}), {1}};
  ShiftTable table;
  table.point = {2.0, 0.5};
  table.values[{0}] = {3.0, 0.1};
  CHECK(shift_apply_numeric(ShiftOp(sctx), table).value == 0.0);
  auto r = shift_apply_numeric(ShiftOp::scalar(sctx, 5), table);
  CHECK(r.value == 15.0);
  CHECK(r.error == doctest::Approx(0.5));
  // X * e1 evaluated at the point
  r = shift_apply_numeric(parse_shift("X*e1", sctx), table);
  CHECK(r.value == doctest::Approx(3.0));
  try {
    shift_apply_numeric(ShiftOp::sigma(sctx, 0), table);
    FAIL("expected a missing entry");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingTableEntry);
  }
}

TEST_CASE("the first recurrence holds for the two-site Mellin integral") {
  // F(m) = int psi_flat(X+alpha) alpha^(m-1) d alpha, so the recurrence at Mellin
  // point (1/2,1/2) reads values at integrand exponents (-1/2,-1/2) + shift,
  // some of which need the continuation below -1
  auto set = annihilator_set();
  ShiftOp m1 = mellin(set.at("P1"));
  auto g = testsupport::load_graph("2site");
  auto p = wave::KinPoint::make(g, {2, 2, 1});
  const auto& t = *m1.context().table;
  ShiftTable table;
  table.point.assign(static_cast<size_t>(t.size()), 0.0);
  table.point[static_cast<size_t>(t.index("X1"))] = 2;
  table.point[static_cast<size_t>(t.index("X2"))] = 2;
  table.point[static_cast<size_t>(t.index("Y"))] = 1;
  table.point[static_cast<size_t>(t.index("e1"))] = 0.5;
  table.point[static_cast<size_t>(t.index("e2"))] = 0.5;
  double scale = 0.0;
  for (const auto& [shift, c] : m1.terms()) {
    std::vector<double> eps{-0.5 + shift[0], -0.5 + shift[1]};
    auto est = wave::psi_eps_continued(g, p, eps);
    table.values[shift] = {est.value, est.error};
    scale = std::max(scale, std::abs(est.value));
  }
  auto r = shift_apply_numeric(m1, table);
  MESSAGE("residual " << r.value << " error " << r.error);
  CHECK(r.error < 1e-6 * scale);
  CHECK(std::abs(r.value) < 3 * r.error);

  // the same table does not satisfy a perturbed recurrence
  ShiftOp wrong = m1 + ShiftOp::sigma(m1.context(), 0);
  CHECK(std::abs(shift_apply_numeric(wrong, table).value) > 100 * r.error);
}
