#include "treebo/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace treebo {
namespace {

LeafStats leaf_stats(const Vector& values, const std::vector<int>& rows, int begin, int end) {
  const int n = end - begin;
  Scalar sum = 0.0;
  for (int i = begin; i < end; ++i) sum += values[rows[i]];
  const Scalar mean = sum / n;
  Scalar ssd = 0.0;
  for (int i = begin; i < end; ++i) {
    const Scalar d = values[rows[i]] - mean;
    ssd += d * d;
  }
  return LeafStats{mean, ssd / n, n};
}

bool responses_constant(const Vector& values, const std::vector<int>& rows, int begin, int end) {
  const Scalar first = values[rows[begin]];
  for (int i = begin + 1; i < end; ++i) {
    if (values[rows[i]] != first) return false;
  }
  return true;
}

struct ScoredSplit {
  SplitRule rule;
  Scalar reduction = -std::numeric_limits<Scalar>::infinity();
  bool valid = false;
};

Scalar population_variance(const Scalar sum, const Scalar sum_sq, const int n) {
  const Scalar mean = sum / n;
  return std::max(Scalar(0), sum_sq / n - mean * mean);
}

// Candidate dims must be in ascending order so that exact score ties resolve
// to the lowest dimension (and, within a dimension, the lowest threshold,
// since thresholds are scanned in ascending order).
ScoredSplit scan_deterministic(const Matrix& points, const Vector& values,
                               const std::vector<int>& rows, int begin, int end,
                               const std::vector<int>& dims, int min_leaf) {
  const int n = end - begin;
  ScoredSplit best;

  std::vector<std::pair<Scalar, Scalar>> xy(n);  // (feature value, response)
  for (int d : dims) {
    for (int i = 0; i < n; ++i) {
      const int r = rows[begin + i];
      xy[i] = {points(r, d), values[r]};
    }
    std::sort(xy.begin(), xy.end());
    if (xy.front().first == xy.back().first) continue;  // constant dimension

    Scalar total = 0.0, total_sq = 0.0;
    for (const auto& [x, y] : xy) {
      total += y;
      total_sq += y * y;
    }
    const Scalar var_parent = population_variance(total, total_sq, n);

    Scalar left_sum = 0.0, left_sq = 0.0;
    for (int k = 1; k < n; ++k) {
      left_sum += xy[k - 1].second;
      left_sq += xy[k - 1].second * xy[k - 1].second;
      if (xy[k - 1].first == xy[k].first) continue;
      if (k < min_leaf || n - k < min_leaf) continue;
      const Scalar a = xy[k - 1].first, b = xy[k].first;
      const Scalar mid = a + (b - a) / 2;
      if (!(mid > a) || !(mid < b)) continue;  // no representable midpoint
      const Scalar var_l = population_variance(left_sum, left_sq, k);
      const Scalar var_r = population_variance(total - left_sum, total_sq - left_sq, n - k);
      const Scalar reduction =
          var_parent - (Scalar(k) / n) * var_l - (Scalar(n - k) / n) * var_r;
      if (!best.valid || reduction > best.reduction) {
        best = {SplitRule{d, mid}, reduction, true};
      }
    }
  }
  return best;
}

ScoredSplit scan_random(const Matrix& points, const Vector& values,
                        const std::vector<int>& rows, int begin, int end,
                        const std::vector<int>& dims, int min_leaf, SeededRng& rng) {
  const int n = end - begin;
  ScoredSplit best;

  Scalar total = 0.0, total_sq = 0.0;
  for (int i = begin; i < end; ++i) {
    const Scalar y = values[rows[i]];
    total += y;
    total_sq += y * y;
  }
  const Scalar var_parent = population_variance(total, total_sq, n);

  for (int d : dims) {
    Scalar lo = points(rows[begin], d), hi = lo;
    for (int i = begin + 1; i < end; ++i) {
      lo = std::min(lo, points(rows[i], d));
      hi = std::max(hi, points(rows[i], d));
    }
    if (!(lo < hi)) continue;  // degenerate range, no draw

    const Scalar threshold = rng.uniform(lo, hi);
    int n_left = 0;
    Scalar left_sum = 0.0, left_sq = 0.0;
    for (int i = begin; i < end; ++i) {
      const int r = rows[i];
      if (points(r, d) <= threshold) {
        ++n_left;
        left_sum += values[r];
        left_sq += values[r] * values[r];
      }
    }
    if (n_left < min_leaf || n - n_left < min_leaf) continue;
    const Scalar var_l = population_variance(left_sum, left_sq, n_left);
    const Scalar var_r =
        population_variance(total - left_sum, total_sq - left_sq, n - n_left);
    const Scalar reduction = var_parent - (Scalar(n_left) / n) * var_l -
                             (Scalar(n - n_left) / n) * var_r;
    if (!best.valid || reduction > best.reduction) {
      best = {SplitRule{d, threshold}, reduction, true};
    }
  }
  return best;
}

std::vector<int> all_rows(const Dataset& data) {
  std::vector<int> rows(static_cast<std::size_t>(data.size()));
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

std::vector<int> draw_candidate_dims(int dim, int count, SeededRng& rng) {
  std::vector<int> pool(dim);
  std::iota(pool.begin(), pool.end(), 0);
  // partial Fisher-Yates; result sorted so scans visit dims in ascending order
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_index(dim - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

int MaxFeatures::resolve(int dim) const {
  int k = dim;
  switch (kind) {
    case Kind::kSqrt:
      k = static_cast<int>(std::ceil(std::sqrt(static_cast<Scalar>(dim))));
      break;
    case Kind::kAll:
      k = dim;
      break;
    case Kind::kFixed:
      k = fixed;
      break;
  }
  return std::clamp(k, 1, dim);
}

DecisionTree::DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("tree requires at least one node");
}

std::size_t DecisionTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.is_leaf();
  return n;
}

const LeafStats& DecisionTree::route(const Scalar* x) const {
  const Node* node = &nodes_[0];
  while (!node->is_leaf()) {
    node = x[node->split.dimension] <= node->split.threshold ? &nodes_[node->left]
                                                             : &nodes_[node->right];
  }
  return node->leaf;
}

const LeafStats& DecisionTree::route(const Vector& x) const { return route(x.data()); }

std::optional<SplitRule> best_split_deterministic(const Dataset& node_sample,
                                                  const std::vector<int>& candidate_dims) {
  std::vector<int> dims = candidate_dims;
  std::sort(dims.begin(), dims.end());
  const auto rows = all_rows(node_sample);
  const auto found = scan_deterministic(node_sample.points(), node_sample.values(), rows, 0,
                                        static_cast<int>(rows.size()), dims, 1);
  if (!found.valid) return std::nullopt;
  return found.rule;
}

std::optional<SplitRule> random_split(const Dataset& node_sample,
                                      const std::vector<int>& candidate_dims,
                                      SeededRng& rng) {
  std::vector<int> dims = candidate_dims;
  std::sort(dims.begin(), dims.end());
  const auto rows = all_rows(node_sample);
  const auto found = scan_random(node_sample.points(), node_sample.values(), rows, 0,
                                 static_cast<int>(rows.size()), dims, 1, rng);
  if (!found.valid) return std::nullopt;
  return found.rule;
}

Scalar split_variance_reduction(const Dataset& node_sample, const SplitRule& rule) {
  const auto& points = node_sample.points();
  const auto& values = node_sample.values();
  const int n = static_cast<int>(node_sample.size());

  Scalar sums[2] = {0, 0};
  Scalar means[2] = {0, 0};
  int counts[2] = {0, 0};
  Scalar total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int side = points(i, rule.dimension) <= rule.threshold ? 0 : 1;
    sums[side] += values[i];
    ++counts[side];
    total += values[i];
  }
  const Scalar mean = total / n;
  for (int side : {0, 1}) {
    if (counts[side] > 0) means[side] = sums[side] / counts[side];
  }

  Scalar ssd_parent = 0.0, ssd_children = 0.0;
  for (int i = 0; i < n; ++i) {
    const int side = points(i, rule.dimension) <= rule.threshold ? 0 : 1;
    const Scalar dp = values[i] - mean;
    const Scalar dc = values[i] - means[side];
    ssd_parent += dp * dp;
    ssd_children += dc * dc;
  }
  return (ssd_parent - ssd_children) / n;
}

DecisionTree build_tree(const Dataset& sample, const TreeConfig& config, SeededRng& rng) {
  const Matrix& points = sample.points();
  const Vector& values = sample.values();
  const int dim = static_cast<int>(sample.dim());
  const int n_features = config.max_features.resolve(dim);
  const int min_split = std::max(2, config.min_samples_split);
  const int min_leaf = std::max(1, config.min_samples_leaf);

  std::vector<int> rows = all_rows(sample);
  std::vector<DecisionTree::Node> nodes;
  nodes.reserve(2 * rows.size());

  struct Frame {
    int node;
    int begin, end;
    int depth;
  };
  std::vector<Frame> stack;
  nodes.emplace_back();
  stack.push_back({0, 0, static_cast<int>(rows.size()), 0});

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const int n = f.end - f.begin;

    const bool depth_capped = config.max_depth && f.depth >= *config.max_depth;
    if (n < min_split || depth_capped || responses_constant(values, rows, f.begin, f.end)) {
      nodes[f.node].leaf = leaf_stats(values, rows, f.begin, f.end);
      continue;
    }

    const auto dims = draw_candidate_dims(dim, n_features, rng);
    const ScoredSplit found =
        config.split_mode == SplitMode::kDeterministicBest
            ? scan_deterministic(points, values, rows, f.begin, f.end, dims, min_leaf)
            : scan_random(points, values, rows, f.begin, f.end, dims, min_leaf, rng);
    if (!found.valid) {
      nodes[f.node].leaf = leaf_stats(values, rows, f.begin, f.end);
      continue;
    }

    // Stable partition keeps row order reproducible, so leaf statistics are
    // bit-identical across runs.
    const auto mid_it = std::stable_partition(
        rows.begin() + f.begin, rows.begin() + f.end, [&](int r) {
          return points(r, found.rule.dimension) <= found.rule.threshold;
        });
    const int mid = static_cast<int>(mid_it - rows.begin());

    const int left = static_cast<int>(nodes.size());
    nodes.emplace_back();
    const int right = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[f.node].left = left;
    nodes[f.node].right = right;
    nodes[f.node].split = found.rule;

    // Left frame pushed last so it is grown first (depth-first, left-to-right);
    // this fixes the rng consumption order.
    stack.push_back({right, mid, f.end, f.depth + 1});
    stack.push_back({left, f.begin, mid, f.depth + 1});
  }

  return DecisionTree(std::move(nodes));
}

}  // namespace treebo
