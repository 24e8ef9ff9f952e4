#ifndef TREEBO_ANALYSIS_HPP
#define TREEBO_ANALYSIS_HPP

#include <vector>

#include "treebo/surrogate.hpp"
#include "treebo/types.hpp"

namespace treebo {

struct ProfileRow {
  Scalar x = 0.0;
  Scalar mean = 0.0;
  Scalar std = 0.0;
};

/// KL(p || q) between two Gaussians. Variances are floored at 1e-12 first so
/// exactly-zero tree variances keep the divergence finite.
Scalar kl_gaussian(const PredictiveDistribution& p, const PredictiveDistribution& q);

/// Mean over the grid rows of kl_gaussian(model(x), reference(x)): how far
/// the model's predictive diverges from the reference's. This direction keeps
/// the score finite for tree models whose variance is exactly zero outside
/// the data range; swap the arguments for the opposite direction.
Scalar kl_profile(const Surrogate& reference, const Surrogate& model, const Matrix& grid);

/// 1D predictive profile: one row per grid value, sorted ascending in x.
std::vector<ProfileRow> uncertainty_profile(const Surrogate& model, const Vector& grid);

/// n equispaced values covering [lo, hi] inclusive.
Vector equispaced_grid(Scalar lo, Scalar hi, Index n);

}  // namespace treebo

#endif
