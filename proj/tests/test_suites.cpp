#include "doctest.h"
#include "kreingraph/error.hpp"
#include "kreingraph/suites.hpp"

using namespace kreingraph;

TEST_CASE("every suite passes a short seeded run") {
  SuiteOptions options;
  options.trials = 4;
  options.seed = 19;
  options.j_max = 5;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const nlohmann::json report = run_suite(name, options);
    CHECK(report["passed"].get<bool>());
  }
}

TEST_CASE("attached potentials can be randomised") {
  SuiteOptions options;
  options.trials = 4;
  options.random_attached_potential = true;
  CHECK(run_suite("attach", options)["passed"].get<bool>());
  CHECK(run_suite("insert-edge", options)["passed"].get<bool>());
}

TEST_CASE("suite reports are reproducible") {
  SuiteOptions options;
  options.trials = 3;
  options.seed = 2;
  CHECK(run_suite("lengthen", options).dump() == run_suite("lengthen", options).dump());
}

TEST_CASE("unknown suite") {
  try {
    run_suite("nonsense", {});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == "BAD_ARGUMENT");
  }
}
