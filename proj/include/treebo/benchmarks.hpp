#ifndef TREEBO_BENCHMARKS_HPP
#define TREEBO_BENCHMARKS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treebo/rng.hpp"
#include "treebo/types.hpp"

namespace treebo {

/// A continuous minimization benchmark on its standard domain with its
/// documented optimum.
class Benchmark {
 public:
  Benchmark(std::string name, Bounds bounds, Scalar optimum_value,
            std::optional<Vector> optimizer, std::function<Scalar(const Vector&)> fn);

  const std::string& name() const { return name_; }
  Index dim() const { return bounds_.dim(); }
  const Bounds& bounds() const { return bounds_; }
  Scalar known_optimum_value() const { return optimum_value_; }
  const std::optional<Vector>& known_optimizer() const { return optimizer_; }
  const std::function<Scalar(const Vector&)>& objective() const { return fn_; }

 private:
  std::string name_;
  Bounds bounds_;
  Scalar optimum_value_;
  std::optional<Vector> optimizer_;
  std::function<Scalar(const Vector&)> fn_;
};

/// Checked evaluation: throws on wrong dimension or out-of-bounds input.
Scalar evaluate(const Benchmark& benchmark, const Vector& x);

std::pair<std::optional<Vector>, Scalar> optimum(const Benchmark& benchmark);

/// ackley4, bohachevsky2, branin2, hartmann6, michalewicz2, rosenbrock4.
const std::vector<std::string>& benchmark_names();
const Benchmark& benchmark_by_name(const std::string& name);

/// 1D regression demos: noisy draws of sin(x) or x^3 on [-3, 3].
enum class DemoKind { kSine5, kSine50, kCubic10 };

struct DemoProblem {
  DemoKind kind = DemoKind::kSine5;
  std::string name;
  int n = 5;
  Scalar noise_std = 0.1;
  std::function<Scalar(Scalar)> truth;
};

DemoProblem demo_problem(DemoKind kind);
DemoProblem demo_problem_by_name(const std::string& name);
Bounds demo_bounds();

/// n inputs uniform on the demo domain, responses truth(x) plus Gaussian
/// noise; all inputs are drawn before any noise.
Dataset demo_dataset(const DemoProblem& problem, SeededRng& rng);

}  // namespace treebo

#endif
