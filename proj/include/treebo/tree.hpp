#ifndef TREEBO_TREE_HPP
#define TREEBO_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "treebo/rng.hpp"
#include "treebo/types.hpp"

namespace treebo {

enum class SplitMode {
  kDeterministicBest,  // CART-style scan over midpoints of sorted values
  kRandomLocation,     // one uniform threshold per candidate dimension
};

/// Number of candidate split dimensions drawn at each node.
struct MaxFeatures {
  enum class Kind { kSqrt, kAll, kFixed };
  Kind kind = Kind::kSqrt;
  int fixed = 1;

  static MaxFeatures sqrt() { return {Kind::kSqrt, 1}; }
  static MaxFeatures all() { return {Kind::kAll, 1}; }
  static MaxFeatures fixed_count(int k) { return {Kind::kFixed, k}; }

  int resolve(int dim) const;  // ceil(sqrt(d)) for kSqrt, clamped to [1, d]
};

struct TreeConfig {
  SplitMode split_mode = SplitMode::kDeterministicBest;
  MaxFeatures max_features = MaxFeatures::sqrt();
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  std::optional<int> max_depth;  // unbounded when absent
};

struct SplitRule {
  int dimension = 0;
  Scalar threshold = 0.0;
};

struct LeafStats {
  Scalar mean = 0.0;
  Scalar variance = 0.0;  // population variance of the node's responses
  int count = 0;
};

/// Binary regression tree over axis-aligned splits. Nodes are stored in a
/// flat array; a node is a leaf iff left < 0. Routing sends x left iff
/// x[dim] <= threshold.
class DecisionTree {
 public:
  struct Node {
    std::int32_t left = -1;
    std::int32_t right = -1;
    SplitRule split{};
    LeafStats leaf{};
    bool is_leaf() const { return left < 0; }
  };

  explicit DecisionTree(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t leaf_count() const { return leaves_.size(); }

  /// Leaf reached by x; x must have the training dimensionality.
  const LeafStats& route(const Vector& x) const;
  const LeafStats& route(const Scalar* x) const;

  /// Routes two points at once with interleaved traversal; roughly halves the
  /// memory-latency stalls of back-to-back single routes.
  std::pair<const LeafStats*, const LeafStats*> route2(const Scalar* a, const Scalar* b) const;

 private:
  // 16-byte routing records in breadth-first order, siblings adjacent:
  // internal nodes store first_child >= 0 (right child at first_child + 1),
  // leaves store ~index into leaves_.
  struct PackedNode {
    Scalar threshold;
    std::int32_t first_child;
    std::int32_t dimension;
  };

  void pack();

  std::vector<Node> nodes_;
  std::vector<PackedNode> packed_;
  std::vector<LeafStats> leaves_;
};

inline const LeafStats& route(const DecisionTree& tree, const Vector& x) {
  return tree.route(x);
}

/// Best CART split over all midpoints between consecutive distinct sorted
/// values on each candidate dimension, maximizing the weighted variance
/// reduction Var(parent) - (nL/n)Var(left) - (nR/n)Var(right). Ties go to the
/// lowest dimension index, then the lowest threshold. Returns nullopt when no
/// candidate dimension admits a valid threshold.
std::optional<SplitRule> best_split_deterministic(const Dataset& node_sample,
                                                  const std::vector<int>& candidate_dims);

/// Draws one threshold uniformly on (min, max) of the node's values for each
/// non-degenerate candidate dimension and keeps the candidate with maximal
/// weighted variance reduction; ties go to the lowest dimension index.
std::optional<SplitRule> random_split(const Dataset& node_sample,
                                      const std::vector<int>& candidate_dims,
                                      SeededRng& rng);

/// Weighted variance reduction achieved by applying `rule` to `node_sample`.
Scalar split_variance_reduction(const Dataset& node_sample, const SplitRule& rule);

/// Grows a tree on `sample` by recursive partitioning, depth-first and
/// left-to-right. At each node a fresh set of candidate dimensions is drawn
/// without replacement; growth stops on the config limits, on pure nodes, or
/// when no valid split exists.
DecisionTree build_tree(const Dataset& sample, const TreeConfig& config, SeededRng& rng);

}  // namespace treebo

#endif
