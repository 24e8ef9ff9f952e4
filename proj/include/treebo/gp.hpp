#ifndef TREEBO_GP_HPP
#define TREEBO_GP_HPP

#include <optional>

#include "treebo/types.hpp"

namespace treebo {

struct GpHyperparams {
  Scalar lengthscale = 1.0;      // shared across dimensions
  Scalar signal_variance = 1.0;
  Scalar noise_variance = 1e-8;  // never below the 1e-8 floor
};

/// Matern 5/2 kernel: s^2 (1 + sqrt(5) r/l + 5 r^2 / (3 l^2)) exp(-sqrt(5) r/l)
/// with r = |x - x2|.
Scalar matern52(const Vector& x, const Vector& x2, const GpHyperparams& h);

/// Affine change of coordinates baked into a fitted model: inputs are shifted
/// and scaled so the search box has diameter 1, responses are standardized.
/// The identity transform leaves everything in data units.
struct GpTransform {
  Vector x_shift;
  Scalar x_scale = 1.0;
  Scalar y_shift = 0.0;
  Scalar y_scale = 1.0;

  static GpTransform identity(Index dim);
};

/// Exact GP regressor with precomputed Cholesky factor of K + noise*I.
/// Hyperparameters are expressed in the model's internal (transformed)
/// coordinates; hyperparams_in_data_units() converts back.
class GpModel {
 public:
  /// Prior-only model with an empty training set.
  GpModel(GpHyperparams h, Index dim);

  /// Model over raw data coordinates.
  GpModel(const Dataset& data, GpHyperparams h);

  GpModel(const Dataset& data, GpHyperparams h, GpTransform transform);

  Index size() const { return train_x_.rows(); }
  Index dim() const { return train_x_.cols(); }
  const GpHyperparams& hyperparams() const { return h_; }
  GpHyperparams hyperparams_in_data_units() const;
  const GpTransform& transform() const { return transform_; }

  /// Lower-triangular factor L with L L^T = K + noise*I (plus any escalated
  /// jitter recorded in jitter()).
  const Matrix& factor() const { return chol_; }
  const Vector& weights() const { return weights_; }
  Scalar jitter() const { return jitter_; }

  /// Log marginal likelihood of the (transformed) training responses.
  Scalar log_marginal_likelihood() const;

  PredictiveDistribution predict(const Vector& x) const;
  void predict_many(const Matrix& xs, Vector& means, Vector& variances) const;

 private:
  void factorize();

  GpHyperparams h_;
  GpTransform transform_;
  Matrix train_x_;  // transformed coordinates
  Vector train_y_;  // transformed responses
  Matrix chol_;
  Vector weights_;
  Scalar jitter_ = 0.0;
};

inline PredictiveDistribution gp_predict(const GpModel& model, const Vector& x) {
  return model.predict(x);
}

/// Hyperparameter search box, log10 units over the transformed coordinates.
inline constexpr Scalar kGpLogLengthscaleMin = -3.0, kGpLogLengthscaleMax = 3.0;
inline constexpr Scalar kGpLogSignalMin = -3.0, kGpLogSignalMax = 3.0;
inline constexpr Scalar kGpLogNoiseMin = -8.0, kGpLogNoiseMax = 0.0;
inline constexpr int kGpFitStarts = 8;

/// Log marginal likelihood of `data` under `h` (identity transform), or
/// nullopt when the kernel cannot be factorized even after jitter escalation.
std::optional<Scalar> gp_log_marginal_likelihood(const Dataset& data, const GpHyperparams& h);

/// Fits hyperparameters by maximizing the log marginal likelihood with a
/// multi-start compass search over the log10 box above; inputs are rescaled
/// to box diameter 1 and responses standardized before searching.
GpModel fit_gp(const Dataset& data, const Bounds& bounds);

}  // namespace treebo

#endif
