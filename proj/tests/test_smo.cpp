#include "doctest.h"

#include <cmath>

#include "treebo/benchmarks.hpp"
#include "treebo/smo.hpp"

#include "helpers.hpp"

using namespace treebo;

namespace {

Problem branin_problem() {
  const Benchmark& b = benchmark_by_name("branin2");
  return Problem{[&b](const Vector& x) { return evaluate(b, x); }, b.bounds(),
                 b.known_optimum_value(), 0.0};
}

SurrogateChoice small_bwo() {
  SurrogateChoice choice = SurrogateChoice::from_kind(SurrogateKind::kBwo);
  choice.forest.num_trees = 25;
  return choice;
}

}  // namespace

TEST_SUITE("smo") {

TEST_CASE("initial designs depend only on the stream, never the surrogate") {
  const Bounds box(test::vector_of({0.0, -1.0}), test::vector_of({1.0, 1.0}));
  SeededRng a = derive_stream(123, 4);
  SeededRng b = derive_stream(123, 4);
  const Matrix da = initial_design(box, 5, a);
  const Matrix db = initial_design(box, 5, b);
  CHECK(da == db);
  for (Index i = 0; i < da.rows(); ++i) CHECK(box.contains(da.row(i).transpose()));
}

TEST_CASE("initial designs are uniform") {
  const Bounds box(test::vector_of({2.0}), test::vector_of({5.0}));
  SeededRng rng = derive_stream(9, 9);
  std::vector<double> samples;
  const Matrix pts = initial_design(box, 10000, rng);
  for (Index i = 0; i < pts.rows(); ++i) samples.push_back((pts(i, 0) - 2.0) / 3.0);
  CHECK(test::ks_statistic(samples) < test::ks_critical_001(samples.size()));
}

TEST_CASE("zero iterations reduce to the initial design") {
  const SmoHistory history = run_smo(branin_problem(), small_bwo(), 5, 0, {0.0, 64},
                                     derive_stream(0, 0));
  CHECK(history.size() == 5);
  CHECK(history.incumbent_values[4] == history.evaluations.minCoeff());
  CHECK(history.best_value() == history.evaluations.minCoeff());
}

TEST_CASE("history length is always n_init + iterations") {
  const SmoHistory history = run_smo(branin_problem(), small_bwo(), 5, 7, {0.0, 64},
                                     derive_stream(0, 1));
  CHECK(history.size() == 12);
  CHECK(history.queries.rows() == 12);
  CHECK(history.iter_seconds.size() == 12);
}

TEST_CASE("incumbents never increase") {
  const SmoHistory history = run_smo(branin_problem(), small_bwo(), 5, 20, {0.0, 256},
                                     derive_stream(3, 0));
  for (Index i = 1; i < history.size(); ++i) {
    CHECK(history.incumbent_values[i] <= history.incumbent_values[i - 1]);
  }
}

TEST_CASE("identical seeds give bit-identical histories") {
  const AcquisitionConfig acq{0.0, 512};
  const SmoHistory a = run_smo(branin_problem(), small_bwo(), 5, 100, acq, derive_stream(0, 0));
  const SmoHistory b = run_smo(branin_problem(), small_bwo(), 5, 100, acq, derive_stream(0, 0));
  CHECK(a.queries == b.queries);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.incumbent_values == b.incumbent_values);
  CHECK(a.best_index == b.best_index);
}

TEST_CASE("all surrogates share initial designs and noise draws") {
  // On a zero objective with unit noise the evaluations ARE the noise draws,
  // so matching evaluations at matching indices proves the fairness contract.
  const Bounds box(test::vector_of({0.0}), test::vector_of({1.0}));
  const Problem flat{[](const Vector&) { return 0.0; }, box, 0.0, 1.0};
  const AcquisitionConfig acq{0.0, 64};

  SurrogateChoice bwo = small_bwo();
  SurrogateChoice random = SurrogateChoice::from_kind(SurrogateKind::kRandomSearch);
  SurrogateChoice gp = SurrogateChoice::from_kind(SurrogateKind::kGp);

  const SmoHistory ha = run_smo(flat, bwo, 5, 3, acq, derive_stream(11, 2));
  const SmoHistory hb = run_smo(flat, random, 5, 3, acq, derive_stream(11, 2));
  const SmoHistory hc = run_smo(flat, gp, 5, 3, acq, derive_stream(11, 2));

  CHECK(ha.queries.topRows(5) == hb.queries.topRows(5));
  CHECK(ha.queries.topRows(5) == hc.queries.topRows(5));
  CHECK(ha.evaluations == hb.evaluations);
  CHECK(ha.evaluations == hc.evaluations);
}

TEST_CASE("the final model is reproducible from the recorded history") {
  // No warm-start state: refitting the final training set with the final
  // iteration's stream reproduces the final proposal.
  const Problem problem = branin_problem();
  const SurrogateChoice choice = small_bwo();
  const AcquisitionConfig acq{0.0, 256};
  const Index n_init = 5, iters = 6;
  const SeededRng root = derive_stream(21, 0);
  const SmoHistory history = run_smo(problem, choice, n_init, iters, acq, root);

  const Index fitted_rows = n_init + iters - 1;
  const Dataset data(history.queries.topRows(fitted_rows),
                     history.evaluations.head(fitted_rows));
  ForestSurrogate model(choice.forest);
  model.fit(data, root.substream(2).substream(static_cast<std::uint64_t>(iters)));
  const Vector x = propose(model, problem.bounds, history.incumbent_values[fitted_rows - 1], acq);
  CHECK(x == history.queries.row(n_init + iters - 1).transpose());
}

TEST_CASE("non-finite objective values are reported with the query") {
  const Bounds box(test::vector_of({0.0}), test::vector_of({1.0}));
  const Problem bad{[](const Vector&) { return std::nan(""); }, box, std::nullopt, 0.0};
  CHECK_THROWS_WITH_AS(run_smo(bad, small_bwo(), 2, 0, {0.0, 16}, derive_stream(0, 2)),
                       doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("regret curves subtract the optimum from the incumbents") {
  SmoHistory history;
  history.queries = Matrix::Zero(4, 1);
  history.evaluations = test::vector_of({3.0, 2.0, 2.5, 1.0});
  history.incumbent_values = test::vector_of({3.0, 2.0, 2.0, 1.0});
  history.iter_seconds = Vector::Zero(4);
  history.best_index = 3;

  const Vector regret = regret_curve(history, 1.0);
  CHECK(regret == test::vector_of({2.0, 1.0, 1.0, 0.0}));
  for (Index i = 1; i < regret.size(); ++i) CHECK(regret[i] <= regret[i - 1]);
}

TEST_CASE("the gp surrogate runs the same loop") {
  const Problem problem = branin_problem();
  const SurrogateChoice gp = SurrogateChoice::from_kind(SurrogateKind::kGp);
  const SmoHistory history = run_smo(problem, gp, 5, 3, {0.0, 128}, derive_stream(31, 0));
  CHECK(history.size() == 8);
  for (Index i = 1; i < history.size(); ++i) {
    CHECK(history.incumbent_values[i] <= history.incumbent_values[i - 1]);
  }
}

}  // TEST_SUITE
