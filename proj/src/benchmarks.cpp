#include "treebo/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace treebo {
namespace {

constexpr Scalar kPi = std::numbers::pi;

Bounds box(Index dim, Scalar lo, Scalar hi) {
  return Bounds(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

Scalar ackley(const Vector& x) {
  constexpr Scalar a = 20.0, b = 0.2, c = 2.0 * kPi;
  const Scalar d = static_cast<Scalar>(x.size());
  const Scalar sq = x.squaredNorm() / d;
  Scalar cos_sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) cos_sum += std::cos(c * x[i]);
  return -a * std::exp(-b * std::sqrt(sq)) - std::exp(cos_sum / d) + a + std::numbers::e;
}

Scalar bohachevsky1(const Vector& x) {
  return x[0] * x[0] + 2.0 * x[1] * x[1] - 0.3 * std::cos(3.0 * kPi * x[0]) -
         0.4 * std::cos(4.0 * kPi * x[1]) + 0.7;
}

Scalar branin(const Vector& x) {
  constexpr Scalar a = 1.0;
  const Scalar b = 5.1 / (4.0 * kPi * kPi);
  const Scalar c = 5.0 / kPi;
  constexpr Scalar r = 6.0, s = 10.0;
  const Scalar t = 1.0 / (8.0 * kPi);
  const Scalar u = x[1] - b * x[0] * x[0] + c * x[0] - r;
  return a * u * u + s * (1.0 - t) * std::cos(x[0]) + s;
}

Scalar hartmann6(const Vector& x) {
  static const Scalar alpha[4] = {1.0, 1.2, 3.0, 3.2};
  static const Scalar a[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                 {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                 {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                 {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
  static const Scalar p[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                 {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                 {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                 {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  Scalar sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    Scalar inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const Scalar d = x[j] - p[i][j];
      inner += a[i][j] * d * d;
    }
    sum += alpha[i] * std::exp(-inner);
  }
  return -sum;
}

Scalar michalewicz(const Vector& x) {
  constexpr Scalar m = 10.0;
  Scalar sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar k = static_cast<Scalar>(i + 1);
    sum += std::sin(x[i]) * std::pow(std::sin(k * x[i] * x[i] / kPi), 2.0 * m);
  }
  return -sum;
}

Scalar rosenbrock(const Vector& x) {
  Scalar sum = 0.0;
  for (Index i = 0; i + 1 < x.size(); ++i) {
    const Scalar a = x[i + 1] - x[i] * x[i];
    const Scalar b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

Vector make_vector(std::initializer_list<Scalar> vals) {
  Vector v(static_cast<Index>(vals.size()));
  Index i = 0;
  for (Scalar x : vals) v[i++] = x;
  return v;
}

std::vector<Benchmark> make_suite() {
  std::vector<Benchmark> suite;
  suite.emplace_back("ackley4", box(4, -32.768, 32.768), 0.0, Vector::Zero(4), ackley);
  suite.emplace_back("bohachevsky2", box(2, -100.0, 100.0), 0.0, Vector::Zero(2),
                     bohachevsky1);
  suite.emplace_back("branin2",
                     Bounds(make_vector({-5.0, 0.0}), make_vector({10.0, 15.0})),
                     0.397887, make_vector({kPi, 2.275}), branin);
  suite.emplace_back("hartmann6", box(6, 0.0, 1.0), -3.32237,
                     make_vector({0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573}),
                     hartmann6);
  suite.emplace_back("michalewicz2", box(2, 0.0, kPi), -1.8013,
                     make_vector({2.202906, 1.570796}), michalewicz);
  suite.emplace_back("rosenbrock4", box(4, -2.048, 2.048), 0.0, Vector::Ones(4), rosenbrock);
  return suite;
}

const std::vector<Benchmark>& suite() {
  static const std::vector<Benchmark> s = make_suite();
  return s;
}

}  // namespace

Benchmark::Benchmark(std::string name, Bounds bounds, Scalar optimum_value,
                     std::optional<Vector> optimizer, std::function<Scalar(const Vector&)> fn)
    : name_(std::move(name)),
      bounds_(std::move(bounds)),
      optimum_value_(optimum_value),
      optimizer_(std::move(optimizer)),
      fn_(std::move(fn)) {}

Scalar evaluate(const Benchmark& benchmark, const Vector& x) {
  if (x.size() != benchmark.dim()) {
    throw std::invalid_argument(benchmark.name() + ": expected dimension " +
                                std::to_string(benchmark.dim()));
  }
  if (!benchmark.bounds().contains(x)) {
    std::stringstream ss;
    ss << benchmark.name() << ": point [" << x.transpose() << "] is out of bounds";
    throw std::invalid_argument(ss.str());
  }
  return benchmark.objective()(x);
}

std::pair<std::optional<Vector>, Scalar> optimum(const Benchmark& benchmark) {
  return {benchmark.known_optimizer(), benchmark.known_optimum_value()};
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& b : suite()) out.push_back(b.name());
    return out;
  }();
  return names;
}

const Benchmark& benchmark_by_name(const std::string& name) {
  for (const auto& b : suite()) {
    if (b.name() == name) return b;
  }
  throw std::invalid_argument("unknown benchmark: " + name);
}

Bounds demo_bounds() { return box(1, -3.0, 3.0); }

DemoProblem demo_problem(DemoKind kind) {
  DemoProblem p;
  p.kind = kind;
  switch (kind) {
    case DemoKind::kSine5:
      p.name = "sine5";
      p.n = 5;
      p.noise_std = 0.1;
      p.truth = [](Scalar x) { return std::sin(x); };
      break;
    case DemoKind::kSine50:
      p.name = "sine50";
      p.n = 50;
      p.noise_std = 0.1;
      p.truth = [](Scalar x) { return std::sin(x); };
      break;
    case DemoKind::kCubic10:
      p.name = "cubic10";
      p.n = 10;
      p.noise_std = 1.0;  // the cubic spans roughly +-27 on the demo domain
      p.truth = [](Scalar x) { return x * x * x; };
      break;
  }
  return p;
}

DemoProblem demo_problem_by_name(const std::string& name) {
  for (DemoKind kind : {DemoKind::kSine5, DemoKind::kSine50, DemoKind::kCubic10}) {
    DemoProblem p = demo_problem(kind);
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown demo problem: " + name);
}

Dataset demo_dataset(const DemoProblem& problem, SeededRng& rng) {
  const Bounds bounds = demo_bounds();
  Matrix points(problem.n, 1);
  for (int i = 0; i < problem.n; ++i) {
    points(i, 0) = rng.uniform(bounds.lower()[0], bounds.upper()[0]);
  }
  Vector values(problem.n);
  for (int i = 0; i < problem.n; ++i) {
    values[i] = problem.truth(points(i, 0)) + problem.noise_std * rng.normal();
  }
  return Dataset(std::move(points), std::move(values));
}

}  // namespace treebo
