#include "treebo/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace treebo {

Dataset::Dataset(Matrix points, Vector values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw std::invalid_argument("dataset must have at least one point and one dimension");
  }
  if (points_.rows() != values_.size()) {
    throw std::invalid_argument(
        "length mismatch: " + std::to_string(points_.rows()) + " points vs " +
        std::to_string(values_.size()) + " values");
  }
  for (Index i = 0; i < points_.rows(); ++i) {
    if (!points_.row(i).allFinite()) {
      throw std::invalid_argument("non-finite point at row " + std::to_string(i));
    }
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value at row " + std::to_string(i));
    }
  }
}

Dataset validate_dataset(Matrix points, Vector values) {
  return Dataset(std::move(points), std::move(values));
}

Bounds::Bounds(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0) {
    throw std::invalid_argument("bounds vectors must be non-empty and of equal length");
  }
  for (Index j = 0; j < lower_.size(); ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]) || !(lower_[j] < upper_[j])) {
      throw std::invalid_argument("bounds require lower < upper at dimension " + std::to_string(j));
    }
  }
}

bool Bounds::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

}  // namespace treebo
