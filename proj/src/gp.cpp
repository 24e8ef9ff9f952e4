#include "treebo/gp.hpp"

#include <Eigen/Cholesky>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "treebo/sobol.hpp"

namespace treebo {
namespace {

constexpr Scalar kNoiseFloor = 1e-8;
constexpr Scalar kSqrt5 = 2.23606797749978969640917366873;

void check_hyperparams(const GpHyperparams& h) {
  if (!(h.lengthscale > 0) || !std::isfinite(h.lengthscale) ||
      !(h.signal_variance > 0) || !std::isfinite(h.signal_variance) ||
      !(h.noise_variance >= kNoiseFloor) || !std::isfinite(h.noise_variance)) {
    throw std::invalid_argument("GP hyperparameters must be positive, finite, and have "
                                "noise variance >= 1e-8");
  }
}

Scalar matern52_r(Scalar r, const GpHyperparams& h) {
  const Scalar t = kSqrt5 * r / h.lengthscale;
  return h.signal_variance * (1.0 + t + t * t / 3.0) * std::exp(-t);
}

Matrix kernel_matrix(const Matrix& x, const GpHyperparams& h) {
  const Index n = x.rows();
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    k(i, i) = h.signal_variance;
    for (Index j = i + 1; j < n; ++j) {
      const Scalar v = matern52_r((x.row(i) - x.row(j)).norm(), h);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

// LLT of K + (noise + jitter) I, escalating jitter by decades up to 1e-4.
std::optional<std::pair<Matrix, Scalar>> cholesky_with_jitter(const Matrix& kernel,
                                                              Scalar noise) {
  for (Scalar jitter : {0.0, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4}) {
    Matrix shifted = kernel;
    shifted.diagonal().array() += noise + jitter;
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() == Eigen::Success) {
      return std::make_pair(Matrix(llt.matrixL()), jitter);
    }
  }
  return std::nullopt;
}

}  // namespace

Scalar matern52(const Vector& x, const Vector& x2, const GpHyperparams& h) {
  if (x.size() != x2.size()) throw std::invalid_argument("matern52: dimension mismatch");
  check_hyperparams(h);
  return matern52_r((x - x2).norm(), h);
}

GpTransform GpTransform::identity(Index dim) {
  GpTransform t;
  t.x_shift = Vector::Zero(dim);
  return t;
}

GpModel::GpModel(GpHyperparams h, Index dim)
    : h_(h), transform_(GpTransform::identity(dim)), train_x_(0, dim), train_y_(0) {
  check_hyperparams(h_);
}

GpModel::GpModel(const Dataset& data, GpHyperparams h)
    : GpModel(data, h, GpTransform::identity(data.dim())) {}

GpModel::GpModel(const Dataset& data, GpHyperparams h, GpTransform transform)
    : h_(h), transform_(std::move(transform)) {
  check_hyperparams(h_);
  if (transform_.x_shift.size() != data.dim()) {
    throw std::invalid_argument("transform dimension does not match data");
  }
  train_x_ = (data.points().rowwise() - transform_.x_shift.transpose()) / transform_.x_scale;
  train_y_ = (data.values().array() - transform_.y_shift) / transform_.y_scale;
  factorize();
}

void GpModel::factorize() {
  auto result = cholesky_with_jitter(kernel_matrix(train_x_, h_), h_.noise_variance);
  if (!result) {
    throw std::runtime_error("ill-conditioned kernel: Cholesky failed after jitter escalation");
  }
  chol_ = std::move(result->first);
  jitter_ = result->second;
  weights_ = chol_.triangularView<Eigen::Lower>().solve(train_y_);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(weights_);
}

GpHyperparams GpModel::hyperparams_in_data_units() const {
  return GpHyperparams{h_.lengthscale * transform_.x_scale,
                       h_.signal_variance * transform_.y_scale * transform_.y_scale,
                       h_.noise_variance * transform_.y_scale * transform_.y_scale};
}

Scalar GpModel::log_marginal_likelihood() const {
  const Index n = size();
  if (n == 0) return 0.0;
  const Scalar quad = train_y_.dot(weights_);
  const Scalar logdet = chol_.diagonal().array().log().sum();
  return -0.5 * quad - logdet - 0.5 * static_cast<Scalar>(n) * std::log(2.0 * std::numbers::pi);
}

PredictiveDistribution GpModel::predict(const Vector& x) const {
  Vector mean(1), var(1);
  Matrix xs(1, x.size());
  xs.row(0) = x;
  predict_many(xs, mean, var);
  return PredictiveDistribution{mean[0], var[0]};
}

void GpModel::predict_many(const Matrix& xs, Vector& means, Vector& variances) const {
  if (xs.cols() != dim()) throw std::invalid_argument("gp predict: dimension mismatch");
  const Index nq = xs.rows();
  means.resize(nq);
  variances.resize(nq);

  const Scalar prior_var = h_.signal_variance + h_.noise_variance;
  const Scalar y_var = transform_.y_scale * transform_.y_scale;
  if (size() == 0) {
    means.setConstant(transform_.y_shift);
    variances.setConstant(prior_var * y_var);
    return;
  }

  const Vector train_sq = train_x_.rowwise().squaredNorm();

  // Candidate blocks keep the N x block cross-kernel small.
  constexpr Index kBlock = 4096;
  for (Index start = 0; start < nq; start += kBlock) {
    const Index count = std::min(kBlock, nq - start);
    const Matrix q =
        (xs.middleRows(start, count).rowwise() - transform_.x_shift.transpose()) /
        transform_.x_scale;

    // Cross-kernel via squared distances: |a - b|^2 = |a|^2 + |b|^2 - 2 a.b
    const Vector query_sq = q.rowwise().squaredNorm();
    Matrix cross = train_x_ * q.transpose();  // N x count
    for (Index j = 0; j < count; ++j) {
      for (Index i = 0; i < size(); ++i) {
        const Scalar d2 = std::max(Scalar(0), train_sq[i] + query_sq[j] - 2.0 * cross(i, j));
        cross(i, j) = matern52_r(std::sqrt(d2), h_);
      }
    }

    means.segment(start, count) = cross.transpose() * weights_;
    chol_.triangularView<Eigen::Lower>().solveInPlace(cross);
    for (Index j = 0; j < count; ++j) {
      const Scalar v = prior_var - cross.col(j).squaredNorm();
      variances[start + j] = std::max(Scalar(0), v) * y_var;
      means[start + j] = transform_.y_shift + transform_.y_scale * means[start + j];
    }
  }
}

std::optional<Scalar> gp_log_marginal_likelihood(const Dataset& data, const GpHyperparams& h) {
  check_hyperparams(h);
  const Matrix x = data.points();
  auto result = cholesky_with_jitter(kernel_matrix(x, h), h.noise_variance);
  if (!result) return std::nullopt;
  const Matrix& l = result->first;
  Vector alpha = l.triangularView<Eigen::Lower>().solve(data.values());
  const Scalar quad = alpha.squaredNorm();
  const Scalar logdet = l.diagonal().array().log().sum();
  const Scalar n = static_cast<Scalar>(data.size());
  return -0.5 * quad - logdet - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

GpModel fit_gp(const Dataset& data, const Bounds& bounds) {
  if (data.dim() != bounds.dim()) {
    throw std::invalid_argument("fit_gp: dataset and bounds dimensions differ");
  }

  GpTransform transform;
  transform.x_shift = bounds.lower();
  transform.x_scale = (bounds.upper() - bounds.lower()).norm();
  transform.y_shift = data.values().mean();
  const Scalar sd = std::sqrt((data.values().array() - transform.y_shift).square().mean());
  transform.y_scale = sd > 1e-12 ? sd : 1.0;

  const Matrix x = (data.points().rowwise() - transform.x_shift.transpose()) / transform.x_scale;
  const Vector y = (data.values().array() - transform.y_shift) / transform.y_scale;

  const std::array<Scalar, 3> lo = {kGpLogLengthscaleMin, kGpLogSignalMin, kGpLogNoiseMin};
  const std::array<Scalar, 3> hi = {kGpLogLengthscaleMax, kGpLogSignalMax, kGpLogNoiseMax};

  const auto objective = [&](const std::array<Scalar, 3>& theta) -> Scalar {
    const GpHyperparams h{std::pow(10.0, theta[0]), std::pow(10.0, theta[1]),
                          std::max(kNoiseFloor, std::pow(10.0, theta[2]))};
    auto chol = cholesky_with_jitter(kernel_matrix(x, h), h.noise_variance);
    if (!chol) return -std::numeric_limits<Scalar>::infinity();
    const Matrix& l = chol->first;
    Vector alpha = l.triangularView<Eigen::Lower>().solve(y);
    return -0.5 * alpha.squaredNorm() - l.diagonal().array().log().sum() -
           0.5 * static_cast<Scalar>(y.size()) * std::log(2.0 * std::numbers::pi);
  };

  const Matrix starts = sobol_points(3, kGpFitStarts);
  std::array<Scalar, 3> best_theta{};
  Scalar best_value = -std::numeric_limits<Scalar>::infinity();

  for (Index s = 0; s < starts.rows(); ++s) {
    std::array<Scalar, 3> theta;
    for (int j = 0; j < 3; ++j) theta[j] = lo[j] + starts(s, j) * (hi[j] - lo[j]);
    Scalar value = objective(theta);

    // Compass search with step sizes proportional to the box widths.
    Scalar step = 0.25;
    int evals = 0;
    while (step >= 1.0 / 256.0 && evals < 160) {
      bool improved = false;
      std::array<Scalar, 3> best_move = theta;
      Scalar best_move_value = value;
      for (int j = 0; j < 3; ++j) {
        for (Scalar dir : {1.0, -1.0}) {
          std::array<Scalar, 3> cand = theta;
          cand[j] = std::clamp(cand[j] + dir * step * (hi[j] - lo[j]), lo[j], hi[j]);
          if (cand[j] == theta[j]) continue;
          const Scalar v = objective(cand);
          ++evals;
          if (v > best_move_value) {
            best_move = cand;
            best_move_value = v;
            improved = true;
          }
        }
      }
      if (improved) {
        theta = best_move;
        value = best_move_value;
      } else {
        step *= 0.5;
      }
    }

    if (value > best_value) {
      best_value = value;
      best_theta = theta;
    }
  }

  if (!std::isfinite(best_value)) {
    throw std::runtime_error("ill-conditioned kernel: no hyperparameter candidate factorized");
  }

  const GpHyperparams h{std::pow(10.0, best_theta[0]), std::pow(10.0, best_theta[1]),
                        std::max(kNoiseFloor, std::pow(10.0, best_theta[2]))};
  return GpModel(data, h, transform);
}

}  // namespace treebo
