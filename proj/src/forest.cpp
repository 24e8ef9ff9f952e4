#include "treebo/forest.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treebo {
namespace {

Dataset take_rows(const Dataset& data, const std::vector<Index>& rows) {
  Matrix points(rows.size(), data.dim());
  Vector values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    points.row(static_cast<Index>(i)) = data.points().row(rows[i]);
    values[static_cast<Index>(i)] = data.values()[rows[i]];
  }
  return Dataset(std::move(points), std::move(values));
}

void check_strategy(const ResampleStrategy& s, Index n) {
  if (s.kind == ResampleKind::kOversampleWithoutReplacement ||
      s.kind == ResampleKind::kOversampleWithReplacement) {
    if (!(s.alpha > 1.0)) {
      throw std::invalid_argument("oversampling rate alpha must exceed 1");
    }
  }
  if (s.kind == ResampleKind::kOversampleWithoutReplacement) {
    if (s.beta < 1) throw std::invalid_argument("duplication factor beta must be >= 1");
    if (s.sample_size(n) > s.beta * n) {
      throw std::invalid_argument("alpha*N exceeds the duplicated pool size beta*N");
    }
  }
}

}  // namespace

Index ResampleStrategy::sample_size(Index n) const {
  switch (kind) {
    case ResampleKind::kNone:
    case ResampleKind::kBagging:
      return n;
    case ResampleKind::kOversampleWithoutReplacement:
    case ResampleKind::kOversampleWithReplacement:
      return static_cast<Index>(std::llround(alpha * static_cast<Scalar>(n)));
  }
  return n;
}

ForestConfig forest_preset(ForestPreset preset) {
  ForestConfig cfg;
  switch (preset) {
    case ForestPreset::kRf:
      cfg.resample = ResampleStrategy::bagging();
      cfg.tree.split_mode = SplitMode::kDeterministicBest;
      break;
    case ForestPreset::kErt:
      cfg.resample = ResampleStrategy::none();
      cfg.tree.split_mode = SplitMode::kRandomLocation;
      break;
    case ForestPreset::kBwo:
      cfg.resample = ResampleStrategy::oversampling();
      cfg.tree.split_mode = SplitMode::kRandomLocation;
      break;
    case ForestPreset::kBaggingOversampling:
      cfg.resample = ResampleStrategy::oversampling();
      cfg.tree.split_mode = SplitMode::kDeterministicBest;
      break;
    case ForestPreset::kRandomSplitBagging:
      cfg.resample = ResampleStrategy::bagging();
      cfg.tree.split_mode = SplitMode::kRandomLocation;
      break;
  }
  return cfg;
}

Forest::Forest(std::vector<DecisionTree> trees, ForestConfig config)
    : trees_(std::move(trees)), config_(std::move(config)) {
  if (trees_.empty()) throw std::invalid_argument("forest requires at least one tree");
}

Dataset draw_bootstrap(const Dataset& dataset, const ResampleStrategy& strategy,
                       SeededRng& rng) {
  const Index n = dataset.size();
  check_strategy(strategy, n);

  switch (strategy.kind) {
    case ResampleKind::kNone:
      return dataset;
    case ResampleKind::kBagging:
    case ResampleKind::kOversampleWithReplacement: {
      const Index m = strategy.sample_size(n);
      std::vector<Index> rows(static_cast<std::size_t>(m));
      for (auto& r : rows) r = static_cast<Index>(rng.uniform_index(n));
      return take_rows(dataset, rows);
    }
    case ResampleKind::kOversampleWithoutReplacement: {
      const Index m = strategy.sample_size(n);
      // Draw m distinct slots from the beta-fold duplicated pool; slot s maps
      // back to original row s % n, capping each row's multiplicity at beta.
      std::vector<Index> slots(static_cast<std::size_t>(strategy.beta * n));
      std::iota(slots.begin(), slots.end(), Index(0));
      std::vector<Index> rows(static_cast<std::size_t>(m));
      for (Index i = 0; i < m; ++i) {
        const auto j = i + static_cast<Index>(rng.uniform_index(slots.size() - i));
        std::swap(slots[i], slots[j]);
        rows[static_cast<std::size_t>(i)] = slots[i] % n;
      }
      return take_rows(dataset, rows);
    }
  }
  throw std::logic_error("unreachable resample kind");
}

Forest fit_forest(const Dataset& dataset, const ForestConfig& config, const SeededRng& rng) {
  if (config.num_trees < 1) throw std::invalid_argument("num_trees must be >= 1");
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(config.num_trees));
  for (int b = 0; b < config.num_trees; ++b) {
    SeededRng stream = rng.substream(static_cast<std::uint64_t>(b));
    const Dataset sample = draw_bootstrap(dataset, config.resample, stream);
    trees.push_back(build_tree(sample, config.tree, stream));
  }
  return Forest(std::move(trees), config);
}

namespace {

Scalar clamp_ensemble_variance(Scalar variance) {
  if (variance < 0.0) {
    if (variance < -1e-12) {
      throw std::logic_error("ensemble variance fell below the cancellation tolerance");
    }
    variance = 0.0;
  }
  return variance;
}

}  // namespace

PredictiveDistribution predict(const Forest& forest, const Vector& x) {
  const auto& trees = forest.trees();
  const Scalar b = static_cast<Scalar>(trees.size());

  std::vector<const LeafStats*> leaves(trees.size());
  Scalar mean = 0.0;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    leaves[t] = &trees[t].route(x.data());
    mean += leaves[t]->mean;
  }
  mean /= b;

  // (1/B) sum(sigma_b^2 + mu_b^2) - mean^2, accumulated in deviation form so
  // rounding cannot drive the result negative. Summation order matches
  // predict_many exactly.
  Scalar variance = 0.0;
  for (const LeafStats* leaf : leaves) variance += leaf->variance;
  for (const LeafStats* leaf : leaves) {
    const Scalar d = leaf->mean - mean;
    variance += d * d;
  }
  return PredictiveDistribution{mean, clamp_ensemble_variance(variance / b)};
}

void predict_many(const Forest& forest, const Matrix& xs, Vector& means, Vector& variances) {
  const auto& trees = forest.trees();
  const Index n = xs.rows();
  const Index d = xs.cols();
  const std::size_t num_trees = trees.size();
  const Scalar b = static_cast<Scalar>(num_trees);
  means.resize(n);
  variances.resize(n);

  // Blocked, tree-outer traversal: each tree's nodes stay hot while a block
  // of points routes through it, and the block's leaf-mean scratch stays in
  // L2 for the finalize pass. Accumulation order per point matches the
  // single-point path, so results are bit-identical.
  constexpr Index kBlock = 512;
  std::vector<Scalar> points(static_cast<std::size_t>(kBlock * d));
  Matrix leaf_means(kBlock, static_cast<Index>(num_trees));
  Vector sum_leaf_var(kBlock);

  for (Index start = 0; start < n; start += kBlock) {
    const Index count = std::min(kBlock, n - start);
    for (Index i = 0; i < count; ++i) {
      for (Index j = 0; j < d; ++j) points[static_cast<std::size_t>(i * d + j)] = xs(start + i, j);
    }
    sum_leaf_var.head(count).setZero();
    for (std::size_t t = 0; t < num_trees; ++t) {
      for (Index i = 0; i < count; ++i) {
        const LeafStats& leaf = trees[t].route(&points[static_cast<std::size_t>(i * d)]);
        leaf_means(i, static_cast<Index>(t)) = leaf.mean;
        sum_leaf_var[i] += leaf.variance;
      }
    }
    for (Index i = 0; i < count; ++i) {
      Scalar mean = 0.0;
      for (std::size_t t = 0; t < num_trees; ++t) mean += leaf_means(i, static_cast<Index>(t));
      mean /= b;
      Scalar variance = sum_leaf_var[i];
      for (std::size_t t = 0; t < num_trees; ++t) {
        const Scalar dev = leaf_means(i, static_cast<Index>(t)) - mean;
        variance += dev * dev;
      }
      means[start + i] = mean;
      variances[start + i] = clamp_ensemble_variance(variance / b);
    }
  }
}

Moments membership_moments(long n, long m) {
  if (n < 1 || m < 1) throw std::invalid_argument("membership_moments requires N, M >= 1");
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar mm = static_cast<Scalar>(m);
  // (1 - 1/N)^M via exp(M log1p(-1/N)); exact 0 at N = 1.
  const Scalar q = std::exp(mm * std::log1p(-1.0 / nn));
  return Moments{1.0 - q, q - q * q};
}

Moments unique_count_moments(long n, long m) {
  if (n < 1 || m < 1) throw std::invalid_argument("unique_count_moments requires N, M >= 1");
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar mm = static_cast<Scalar>(m);
  // (N-1)^M / N^(M-1)  = N exp(M log1p(-1/N))
  // (N-2)^M / N^(M-1)  = N exp(M log1p(-2/N))
  // (N-1)^2M / N^(2M-2) = N^2 exp(2M log1p(-1/N))
  const Scalar t1 = nn * std::exp(mm * std::log1p(-1.0 / nn));
  const Scalar t2 = nn * std::exp(mm * std::log1p(-2.0 / nn));
  const Scalar t3 = nn * nn * std::exp(2.0 * mm * std::log1p(-1.0 / nn));
  const Scalar expectation = nn - t1;
  const Scalar variance = (nn - 1.0) * t2 + t1 - t3;
  return Moments{expectation, std::max(Scalar(0), variance)};
}

}  // namespace treebo
