#include "doctest.h"

#include <cmath>

#include "treebo/benchmarks.hpp"
#include "treebo/sobol.hpp"

#include "helpers.hpp"

using namespace treebo;

TEST_SUITE("benchmarks") {

TEST_CASE("ackley vanishes at the origin") {
  const Benchmark& b = benchmark_by_name("ackley4");
  CHECK(std::abs(evaluate(b, Vector::Zero(4))) < 1e-12);
}

TEST_CASE("rosenbrock vanishes at all-ones") {
  const Benchmark& b = benchmark_by_name("rosenbrock4");
  CHECK(evaluate(b, Vector::Ones(4)) == 0.0);
}

TEST_CASE("bohachevsky optimum sits at the origin") {
  const Benchmark& b = benchmark_by_name("bohachevsky2");
  const auto [point, value] = optimum(b);
  REQUIRE(point.has_value());
  CHECK(*point == Vector::Zero(2));
  CHECK(value == 0.0);
  CHECK(std::abs(evaluate(b, *point)) < 1e-12);
}

TEST_CASE("branin evaluates to its documented optimum") {
  const Benchmark& b = benchmark_by_name("branin2");
  const Vector x = test::vector_of({3.14159265358979, 2.275});
  CHECK(evaluate(b, x) == doctest::Approx(0.397887).epsilon(1e-5));
}

TEST_CASE("a dense grid confirms the branin optimum") {
  const Benchmark& b = benchmark_by_name("branin2");
  Scalar best = 1e300;
  const int steps = 2001;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const Scalar x0 = -5.0 + 15.0 * static_cast<Scalar>(i) / (steps - 1);
      const Scalar x1 = 15.0 * static_cast<Scalar>(j) / (steps - 1);
      best = std::min(best, b.objective()(test::vector_of({x0, x1})));
    }
  }
  CHECK(best >= 0.397887 - 1e-6);
  CHECK(best - 0.397887 < 1e-3);
}

TEST_CASE("a dense grid confirms the michalewicz optimum") {
  const Benchmark& b = benchmark_by_name("michalewicz2");
  Scalar best = 1e300;
  Scalar arg0 = 0, arg1 = 0;
  const int steps = 2001;
  const Scalar pi = 3.14159265358979323846;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const Scalar x0 = pi * static_cast<Scalar>(i) / (steps - 1);
      const Scalar x1 = pi * static_cast<Scalar>(j) / (steps - 1);
      const Scalar v = b.objective()(test::vector_of({x0, x1}));
      if (v < best) {
        best = v;
        arg0 = x0;
        arg1 = x1;
      }
    }
  }
  CHECK(std::abs(best - (-1.8013)) < 1e-3);
  CHECK(std::abs(arg0 - 2.20) < 0.01);
  CHECK(std::abs(arg1 - 1.57) < 0.01);
}

TEST_CASE("every optimizer evaluates to its stated optimum value") {
  for (const std::string& name : benchmark_names()) {
    const Benchmark& b = benchmark_by_name(name);
    const auto [point, value] = optimum(b);
    REQUIRE(point.has_value());
    CHECK(std::abs(evaluate(b, *point) - value) < 1e-4);
  }
}

TEST_CASE("no point of a million-point scan beats a stated optimum") {
  for (const std::string& name : benchmark_names()) {
    const Benchmark& b = benchmark_by_name(name);
    const Matrix unit = sobol_points(static_cast<int>(b.dim()), 1000000);
    Scalar best = 1e300;
    Vector x(b.dim());
    for (Index i = 0; i < unit.rows(); ++i) {
      for (Index j = 0; j < b.dim(); ++j) {
        x[j] = b.bounds().lower()[j] + unit(i, j) * b.bounds().span(j);
      }
      best = std::min(best, b.objective()(x));
    }
    CHECK(best >= b.known_optimum_value() - 1e-3);
  }
}

TEST_CASE("evaluate rejects wrong dimension and out-of-bounds points") {
  const Benchmark& b = benchmark_by_name("branin2");
  CHECK_THROWS_AS(evaluate(b, Vector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(b, test::vector_of({-20.0, 0.0})), std::invalid_argument);
}

TEST_CASE("evaluation is pure") {
  const Benchmark& b = benchmark_by_name("hartmann6");
  const Vector x = Vector::Constant(6, 0.3);
  const Scalar first = evaluate(b, x);
  for (int i = 0; i < 10; ++i) CHECK(evaluate(b, x) == first);
}

TEST_CASE("demo problems draw the documented number of in-domain points") {
  for (auto [kind, n] : {std::pair{DemoKind::kSine5, 5},
                         {DemoKind::kSine50, 50},
                         {DemoKind::kCubic10, 10}}) {
    SeededRng rng = derive_stream(71, static_cast<std::uint64_t>(n));
    const Dataset data = demo_dataset(demo_problem(kind), rng);
    CHECK(data.size() == n);
    for (Index i = 0; i < data.size(); ++i) {
      CHECK(data.points()(i, 0) >= -3.0);
      CHECK(data.points()(i, 0) <= 3.0);
    }
  }
}

TEST_CASE("demo truths are the noiseless sine and cubic") {
  const DemoProblem sine = demo_problem(DemoKind::kSine5);
  CHECK(sine.truth(3.14159265358979 / 2) == doctest::Approx(1.0));
  const DemoProblem cubic = demo_problem(DemoKind::kCubic10);
  CHECK(cubic.truth(2.0) == doctest::Approx(8.0));
  CHECK(cubic.noise_std == doctest::Approx(1.0));
}

TEST_CASE("demo datasets are reproducible per seed") {
  const DemoProblem p = demo_problem(DemoKind::kSine5);
  SeededRng a = derive_stream(5, 5);
  SeededRng b = derive_stream(5, 5);
  const Dataset da = demo_dataset(p, a);
  const Dataset db = demo_dataset(p, b);
  CHECK(da.points() == db.points());
  CHECK(da.values() == db.values());
}

}  // TEST_SUITE
