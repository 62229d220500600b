#include <catch2/catch_amalgamated.hpp>

#include "msl/step_function.hpp"

using namespace msl;

TEST_CASE("evaluation rule: right-continuous with flat extension") {
  StepFunction theta({1.0, 2.0, 4.0}, {0.1, 0.5, 0.9});
  REQUIRE(theta(0.0) == 0.1);   // below the first knot
  REQUIRE(theta(1.0) == 0.1);   // exactly at a knot
  REQUIRE(theta(1.999) == 0.1);
  REQUIRE(theta(2.0) == 0.5);
  REQUIRE(theta(3.5) == 0.5);
  REQUIRE(theta(4.0) == 0.9);
  REQUIRE(theta(100.0) == 0.9);  // above the last knot
  REQUIRE(step_eval(theta, 2.5) == 0.5);
}

TEST_CASE("construction validates the invariants") {
  REQUIRE_THROWS_AS(StepFunction({}, {}), Error);
  REQUIRE_THROWS_AS(StepFunction({1.0, 1.0}, {0.1, 0.2}), Error);   // knots not increasing
  REQUIRE_THROWS_AS(StepFunction({1.0, 2.0}, {0.5, 0.2}), Error);   // values decreasing
  REQUIRE_THROWS_AS(StepFunction({1.0}, {1.5}), Error);             // above 1
  REQUIRE_THROWS_AS(StepFunction({1.0}, {-0.5}), Error);            // below 0
  REQUIRE_THROWS_AS(StepFunction({1.0, 2.0}, {0.1}), Error);        // length mismatch
  REQUIRE_NOTHROW(StepFunction({0.0}, {0.0}));
  REQUIRE_NOTHROW(StepFunction({0.0, 1.0}, {0.3, 0.3}));  // equal values allowed
}

TEST_CASE("non-finite evaluation points are rejected") {
  StepFunction theta({0.0}, {0.5});
  REQUIRE_THROWS_AS(theta(std::numeric_limits<double>::quiet_NaN()), Error);
  REQUIRE_THROWS_AS(theta(std::numeric_limits<double>::infinity()), Error);
}
