#include "treebo/smo.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace treebo {
namespace {

Scalar evaluate_with_noise(const Problem& problem, const Vector& x, SeededRng& noise_rng) {
  const Scalar noise = noise_rng.normal();  // always consumed, for cross-model fairness
  const Scalar y = problem.objective(x) + problem.noise_std * noise;
  if (!std::isfinite(y)) {
    std::stringstream ss;
    ss << "objective returned a non-finite value at [" << x.transpose() << "]";
    throw std::runtime_error(ss.str());
  }
  return y;
}

}  // namespace

SurrogateChoice SurrogateChoice::from_kind(SurrogateKind kind) {
  SurrogateChoice choice;
  choice.kind = kind;
  switch (kind) {
    case SurrogateKind::kRf: choice.forest = forest_preset(ForestPreset::kRf); break;
    case SurrogateKind::kErt: choice.forest = forest_preset(ForestPreset::kErt); break;
    case SurrogateKind::kBwo: choice.forest = forest_preset(ForestPreset::kBwo); break;
    case SurrogateKind::kBaggingOversampling:
      choice.forest = forest_preset(ForestPreset::kBaggingOversampling);
      break;
    case SurrogateKind::kRandomSplitBagging:
      choice.forest = forest_preset(ForestPreset::kRandomSplitBagging);
      break;
    case SurrogateKind::kGp:
    case SurrogateKind::kRandomSearch:
      break;
  }
  return choice;
}

Matrix initial_design(const Bounds& bounds, Index n, SeededRng& rng) {
  if (n < 1) throw std::invalid_argument("initial design requires n >= 1");
  Matrix pts(n, bounds.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < bounds.dim(); ++j) {
      pts(i, j) = rng.uniform(bounds.lower()[j], bounds.upper()[j]);
    }
  }
  return pts;
}

SmoHistory run_smo(const Problem& problem, const SurrogateChoice& surrogate, Index n_init,
                   Index iterations, const AcquisitionConfig& acquisition,
                   const SeededRng& rng) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  const Index total = n_init + iterations;
  const Index d = problem.bounds.dim();

  SeededRng design_rng = rng.substream(0);
  SeededRng noise_rng = rng.substream(1);
  SeededRng fit_master = rng.substream(2);
  SeededRng proposal_rng = rng.substream(3);

  SmoHistory history;
  history.queries.resize(total, d);
  history.evaluations.resize(total);
  history.incumbent_values.resize(total);
  history.iter_seconds.resize(total);

  history.queries.topRows(n_init) = initial_design(problem.bounds, n_init, design_rng);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < n_init; ++i) {
    const Scalar y = evaluate_with_noise(problem, history.queries.row(i).transpose(), noise_rng);
    history.evaluations[i] = y;
    if (y < best) {
      best = y;
      history.best_index = i;
    }
    history.incumbent_values[i] = best;
    history.iter_seconds[i] = 0.0;
  }

  std::unique_ptr<Surrogate> model;
  if (surrogate.kind != SurrogateKind::kRandomSearch) {
    model = make_surrogate(surrogate.kind, surrogate.forest, problem.bounds);
  }

  for (Index t = 1; t <= iterations; ++t) {
    const Index row = n_init + t - 1;
    const auto started = std::chrono::steady_clock::now();

    Vector x(d);
    if (model) {
      const Dataset data(history.queries.topRows(row), history.evaluations.head(row));
      model->fit(data, fit_master.substream(static_cast<std::uint64_t>(t)));
      x = propose(*model, problem.bounds, best, acquisition);
    } else {
      for (Index j = 0; j < d; ++j) {
        x[j] = proposal_rng.uniform(problem.bounds.lower()[j], problem.bounds.upper()[j]);
      }
    }
    history.iter_seconds[row] =
        std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - started).count();

    history.queries.row(row) = x.transpose();
    const Scalar y = evaluate_with_noise(problem, x, noise_rng);
    history.evaluations[row] = y;
    if (y < best) {
      best = y;
      history.best_index = row;
    }
    history.incumbent_values[row] = best;
  }

  return history;
}

Vector regret_curve(const SmoHistory& history, Scalar f_star) {
  if (!std::isfinite(f_star)) throw std::invalid_argument("f_star must be finite");
  return history.incumbent_values.array() - f_star;
}

}  // namespace treebo
