#ifndef TREEBO_TEST_HELPERS_HPP
#define TREEBO_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "treebo/rng.hpp"
#include "treebo/types.hpp"

namespace treebo::test {

/// Kolmogorov-Smirnov statistic of samples against U(0,1).
inline double ks_statistic(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = samples[i];
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

/// Critical KS value at significance 0.01 for large n.
inline double ks_critical_001(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

inline Matrix column_matrix(const std::vector<Scalar>& xs) {
  Matrix m(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) m(static_cast<Index>(i), 0) = xs[i];
  return m;
}

inline Vector vector_of(const std::vector<Scalar>& xs) {
  Vector v(static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Index>(i)] = xs[i];
  return v;
}

inline Dataset dataset_1d(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  return Dataset(column_matrix(xs), vector_of(ys));
}

inline Matrix random_points(const Bounds& bounds, Index n, SeededRng& rng) {
  Matrix pts(n, bounds.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < bounds.dim(); ++j) {
      pts(i, j) = rng.uniform(bounds.lower()[j], bounds.upper()[j]);
    }
  }
  return pts;
}

}  // namespace treebo::test

#endif
