#include "doctest.h"
#include "support/properties.hpp"

using namespace testsupport;

namespace {

void check(const SuiteResult& r) {
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases == 200);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("Mellin transform is a ring homomorphism") { check(mellin_homomorphism()); }
TEST_CASE("sigma and eps commute up to a unit shift") { check(sigma_eps_law()); }
TEST_CASE("ann_generators annihilate 1/p") { check(ann_generators_annihilate()); }
TEST_CASE("gauge transformations form a group action") { check(gauge_group_laws()); }
TEST_CASE("rendering and parsing are inverse") { check(render_parse_round_trips()); }

TEST_CASE("a broken law is detected") {
  auto r = run_suite("always wrong", 5, 1, [](Random&, std::string& why) {
    why = "no";
    return false;
  });
  CHECK(r.failures == 5);
  CHECK_FALSE(r.ok());
}
