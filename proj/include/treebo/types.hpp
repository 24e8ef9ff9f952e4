#ifndef TREEBO_TYPES_HPP
#define TREEBO_TYPES_HPP

#include <Eigen/Core>

namespace treebo {

using Scalar = double;
using Index  = Eigen::Index;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Gaussian posterior predictive at a single query point.
struct PredictiveDistribution {
  Scalar mean = 0.0;
  Scalar variance = 0.0;
};

/// Immutable (points, values) pair. Construction validates shape and
/// finiteness; an instance is either fully valid or never exists.
class Dataset {
 public:
  Dataset(Matrix points, Vector values);

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  const Vector& values() const { return values_; }

 private:
  Matrix points_;  // N x d
  Vector values_;  // N
};

/// Axis-aligned search box with lower[j] < upper[j] for every dimension.
class Bounds {
 public:
  Bounds(Vector lower, Vector upper);

  Index dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Scalar span(Index j) const { return upper_[j] - lower_[j]; }
  bool contains(const Vector& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

Dataset validate_dataset(Matrix points, Vector values);

}  // namespace treebo

#endif
