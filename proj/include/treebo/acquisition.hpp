#ifndef TREEBO_ACQUISITION_HPP
#define TREEBO_ACQUISITION_HPP

#include "treebo/surrogate.hpp"
#include "treebo/types.hpp"

namespace treebo {

struct AcquisitionConfig {
  Scalar xi = 0.0;            // exploration offset, >= 0
  Index n_candidates = 50000;
};

/// Expected improvement for minimization with incumbent `best`:
/// z = (best - mean - xi) / sigma, EI = (best - mean - xi) Phi(z) + sigma phi(z),
/// degenerating to max(0, best - mean - xi) at sigma = 0.
Scalar expected_improvement(const PredictiveDistribution& dist, Scalar best, Scalar xi);

/// Sobol' candidates scaled into the box, one row per point.
Matrix candidate_grid(const Bounds& bounds, Index n);

/// Uniform-random candidates (used by comparison baselines, not by propose).
Matrix random_candidates(const Bounds& bounds, Index n, SeededRng& rng);

/// Evaluates EI on the deterministic candidate grid and returns the argmax;
/// exact ties go to the lowest candidate index, so repeated calls with the
/// same inputs return the identical point.
Vector propose(const Surrogate& model, const Bounds& bounds, Scalar best,
               const AcquisitionConfig& config);

}  // namespace treebo

#endif
