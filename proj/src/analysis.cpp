#include "treebo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treebo {

Scalar kl_gaussian(const PredictiveDistribution& p, const PredictiveDistribution& q) {
  constexpr Scalar kFloor = 1e-12;
  const Scalar vp = std::max(kFloor, p.variance);
  const Scalar vq = std::max(kFloor, q.variance);
  const Scalar dm = p.mean - q.mean;
  const Scalar kl = 0.5 * std::log(vq / vp) + (vp + dm * dm) / (2.0 * vq) - 0.5;
  return std::max(Scalar(0), kl);
}

Scalar kl_profile(const Surrogate& reference, const Surrogate& model, const Matrix& grid) {
  if (grid.rows() == 0) throw std::invalid_argument("kl_profile requires a non-empty grid");
  Vector ref_mean, ref_var, mod_mean, mod_var;
  reference.predict_many(grid, ref_mean, ref_var);
  model.predict_many(grid, mod_mean, mod_var);
  Scalar sum = 0.0;
  for (Index i = 0; i < grid.rows(); ++i) {
    sum += kl_gaussian({mod_mean[i], mod_var[i]}, {ref_mean[i], ref_var[i]});
  }
  return sum / static_cast<Scalar>(grid.rows());
}

std::vector<ProfileRow> uncertainty_profile(const Surrogate& model, const Vector& grid) {
  Vector sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  Matrix xs(sorted.size(), 1);
  xs.col(0) = sorted;
  Vector means, variances;
  model.predict_many(xs, means, variances);

  std::vector<ProfileRow> rows(static_cast<std::size_t>(sorted.size()));
  for (Index i = 0; i < sorted.size(); ++i) {
    rows[static_cast<std::size_t>(i)] = {sorted[i], means[i],
                                         std::sqrt(std::max(Scalar(0), variances[i]))};
  }
  return rows;
}

Vector equispaced_grid(Scalar lo, Scalar hi, Index n) {
  if (n < 2 || !(lo < hi)) throw std::invalid_argument("grid requires n >= 2 and lo < hi");
  return Vector::LinSpaced(n, lo, hi);
}

}  // namespace treebo
