#ifndef TREEBO_SMO_HPP
#define TREEBO_SMO_HPP

#include <functional>
#include <optional>

#include "treebo/acquisition.hpp"
#include "treebo/rng.hpp"
#include "treebo/surrogate.hpp"
#include "treebo/types.hpp"

namespace treebo {

struct Problem {
  std::function<Scalar(const Vector&)> objective;
  Bounds bounds;
  std::optional<Scalar> known_optimum_value;
  Scalar noise_std = 0.0;
};

/// Which model drives the optimization; tree kinds carry their full forest
/// configuration, kGp uses fit_gp defaults, kRandomSearch proposes uniform
/// points without any model.
struct SurrogateChoice {
  SurrogateKind kind = SurrogateKind::kBwo;
  ForestConfig forest = forest_preset(ForestPreset::kBwo);

  static SurrogateChoice from_kind(SurrogateKind kind);
};

/// Full record of one optimization run: the initial design followed by the
/// proposed queries, their evaluations, the running minimum, and the model
/// cost (fit + propose seconds) per entry. All columns have n_init + T rows;
/// initial-design rows carry zero model cost.
struct SmoHistory {
  Matrix queries;
  Vector evaluations;
  Vector incumbent_values;
  Vector iter_seconds;
  Index best_index = 0;

  Index size() const { return evaluations.size(); }
  Vector best_point() const { return queries.row(best_index).transpose(); }
  Scalar best_value() const { return evaluations[best_index]; }
};

/// n points uniform in the box. Callers key the stream by (master seed,
/// repeat index) only, so every surrogate within a repeat sees the same
/// design.
Matrix initial_design(const Bounds& bounds, Index n, SeededRng& rng);

/// The fit-propose-evaluate loop. Every iteration refits the surrogate from
/// scratch on all data gathered so far. Substreams of `rng`: 0 initial
/// design, 1 observation noise (consumed once per evaluation), 2 per-iteration
/// model fitting, 3 random-search proposals; the first two never depend on
/// the surrogate kind.
SmoHistory run_smo(const Problem& problem, const SurrogateChoice& surrogate, Index n_init,
                   Index iterations, const AcquisitionConfig& acquisition,
                   const SeededRng& rng);

/// incumbent[t] - f_star for every history entry; non-increasing.
Vector regret_curve(const SmoHistory& history, Scalar f_star);

}  // namespace treebo

#endif
