#include <doctest.h>

#include <set>

#include "ecf/errors.hpp"
#include "ecf/verify.hpp"

using namespace ecf;

TEST_SUITE("verify") {
  TEST_CASE("every check runs once, in id order, with a name and a detail line") {
    const auto results = run_verify();
    REQUIRE(results.size() == check_ids().size());
    std::set<int> ids;
    for (std::size_t i = 0; i < results.size(); ++i) {
      CHECK(results[i].id == check_ids()[i]);
      CHECK(!results[i].name.empty());
      CHECK(!results[i].detail.empty());
      CHECK(results[i].seconds >= 0);
      ids.insert(results[i].id);
    }
    CHECK(ids.size() == results.size());
    for (int id = 1; id <= kAcceptanceCriteria; ++id) CHECK(ids.count(id) == 1);
  }

  TEST_CASE("only the Brouncker identity is flagged empirical") {
    for (int id : check_ids()) CHECK(run_check(id).empirical == (id == 11));
  }

  TEST_CASE("failures carry a FAILED line, passes do not") {
    for (const CheckResult& r : run_verify())
      CHECK((r.detail.find("FAILED") == std::string::npos) == r.passed);
  }

  TEST_CASE("a single check matches the full run and unknown ids are rejected") {
    const CheckResult one = run_check(6);
    for (const CheckResult& r : run_verify())
      if (r.id == 6) {
        CHECK(r.passed == one.passed);
        CHECK(r.detail == one.detail);
      }
    CHECK_THROWS_AS(run_check(0), DomainError);
    CHECK_THROWS_AS(run_check(99), DomainError);
  }
}
