#include "doctest.h"

#include <limits>

#include "treebo/types.hpp"

#include "helpers.hpp"

using namespace treebo;

TEST_SUITE("types") {

TEST_CASE("validate_dataset accepts a minimal valid input") {
  const Dataset data = validate_dataset(test::column_matrix({0.0, 1.0}),
                                        test::vector_of({0.0, 1.0}));
  CHECK(data.size() == 2);
  CHECK(data.dim() == 1);
}

TEST_CASE("validate_dataset rejects length mismatch") {
  CHECK_THROWS_WITH_AS(
      validate_dataset(test::column_matrix({0.0, 1.0}), test::vector_of({0.0})),
      doctest::Contains("length mismatch"), std::invalid_argument);
}

TEST_CASE("validate_dataset reports the offending row for non-finite entries") {
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  CHECK_THROWS_WITH_AS(validate_dataset(test::column_matrix({nan}), test::vector_of({0.0})),
                       doctest::Contains("row 0"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      validate_dataset(test::column_matrix({0.0, 1.0}),
                       test::vector_of({0.0, std::numeric_limits<Scalar>::infinity()})),
      doctest::Contains("row 1"), std::invalid_argument);
}

TEST_CASE("validate_dataset rejects empty input") {
  CHECK_THROWS_AS(validate_dataset(Matrix(0, 1), Vector(0)), std::invalid_argument);
}

TEST_CASE("bounds require lower < upper in every dimension") {
  CHECK_THROWS_AS(Bounds(test::vector_of({0.0, 1.0}), test::vector_of({1.0, 1.0})),
                  std::invalid_argument);
  const Bounds box(test::vector_of({-1.0, 0.0}), test::vector_of({1.0, 2.0}));
  CHECK(box.contains(test::vector_of({0.0, 1.0})));
  CHECK(box.contains(test::vector_of({1.0, 2.0})));  // boundary included
  CHECK_FALSE(box.contains(test::vector_of({1.5, 1.0})));
}

}  // TEST_SUITE
