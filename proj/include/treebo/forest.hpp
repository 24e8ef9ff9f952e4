#ifndef TREEBO_FOREST_HPP
#define TREEBO_FOREST_HPP

#include <vector>

#include "treebo/rng.hpp"
#include "treebo/tree.hpp"
#include "treebo/types.hpp"

namespace treebo {

enum class ResampleKind {
  kNone,     // the dataset itself, no resampling
  kBagging,  // N draws with replacement
  // M = round(alpha*N) rows drawn without replacement from the dataset
  // duplicated beta times; each original appears at most beta times.
  kOversampleWithoutReplacement,
  // M = round(alpha*N) draws with replacement; the sampling model behind the
  // closed-form unique-element moments.
  kOversampleWithReplacement,
};

struct ResampleStrategy {
  ResampleKind kind = ResampleKind::kBagging;
  Scalar alpha = 4.0;  // rate of oversampling, > 1
  int beta = 16;       // duplication factor for the without-replacement draw

  Index sample_size(Index n) const;

  static ResampleStrategy none() { return {ResampleKind::kNone}; }
  static ResampleStrategy bagging() { return {ResampleKind::kBagging}; }
  static ResampleStrategy oversampling(Scalar alpha = 4.0, int beta = 16) {
    return {ResampleKind::kOversampleWithoutReplacement, alpha, beta};
  }
};

struct ForestConfig {
  int num_trees = 100;
  ResampleStrategy resample = ResampleStrategy::bagging();
  TreeConfig tree;
};

/// Named ensemble presets. B, O, and R stand for bagging, oversampling, and
/// random split locations.
enum class ForestPreset {
  kRf,          // B + deterministic splits
  kErt,         // R only, no resampling
  kBwo,         // R + B + O
  kBaggingOversampling,  // B + O, deterministic splits
  kRandomSplitBagging,   // R + B
};

ForestConfig forest_preset(ForestPreset preset);

class Forest {
 public:
  Forest(std::vector<DecisionTree> trees, ForestConfig config);

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  int num_trees() const { return static_cast<int>(trees_.size()); }

 private:
  std::vector<DecisionTree> trees_;
  ForestConfig config_;
};

/// Resamples `dataset` according to `strategy`; responses are carried along
/// with their rows.
Dataset draw_bootstrap(const Dataset& dataset, const ResampleStrategy& strategy,
                       SeededRng& rng);

/// Trains config.num_trees trees, each on its own bootstrap sample. Tree b
/// consumes the substream keyed by b, so the result is independent of any
/// execution schedule.
Forest fit_forest(const Dataset& dataset, const ForestConfig& config, const SeededRng& rng);

/// Ensemble posterior predictive by the law of total variance: the mean is
/// the average of routed leaf means, and the variance is the average
/// within-leaf variance plus the spread of leaf means across trees.
PredictiveDistribution predict(const Forest& forest, const Vector& x);

/// Batch form of predict, one row of xs per query point; bit-identical to the
/// single-point path.
void predict_many(const Forest& forest, const Matrix& xs, Vector& means, Vector& variances);

struct Moments {
  Scalar expectation = 0.0;
  Scalar variance = 0.0;
};

/// Moments of the indicator that a fixed point appears in a bootstrap sample
/// of size M drawn with replacement from N points.
Moments membership_moments(long n, long m);

/// Moments of the number of unique original points in such a sample.
/// Evaluated in log space so large M does not overflow.
Moments unique_count_moments(long n, long m);

}  // namespace treebo

#endif
