#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "treebo/tree.hpp"

#include "helpers.hpp"

using namespace treebo;

namespace {

// Independent split scorer: plain two-pass variances over explicit subsets.
Scalar oracle_reduction(const Dataset& data, int dim, Scalar threshold) {
  std::vector<Scalar> left, right, all;
  for (Index i = 0; i < data.size(); ++i) {
    all.push_back(data.values()[i]);
    if (data.points()(i, dim) <= threshold) {
      left.push_back(data.values()[i]);
    } else {
      right.push_back(data.values()[i]);
    }
  }
  auto var = [](const std::vector<Scalar>& ys) {
    if (ys.empty()) return Scalar(0);
    Scalar mean = 0.0;
    for (Scalar y : ys) mean += y;
    mean /= static_cast<Scalar>(ys.size());
    Scalar ssd = 0.0;
    for (Scalar y : ys) ssd += (y - mean) * (y - mean);
    return ssd / static_cast<Scalar>(ys.size());
  };
  const Scalar n = static_cast<Scalar>(all.size());
  return var(all) - (static_cast<Scalar>(left.size()) / n) * var(left) -
         (static_cast<Scalar>(right.size()) / n) * var(right);
}

// All (dim, midpoint) candidates a deterministic scan may consider.
std::vector<SplitRule> enumerate_midpoints(const Dataset& data, const std::vector<int>& dims) {
  std::vector<SplitRule> out;
  for (int d : dims) {
    std::vector<Scalar> xs;
    for (Index i = 0; i < data.size(); ++i) xs.push_back(data.points()(i, d));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t k = 1; k < xs.size(); ++k) {
      out.push_back({d, xs[k - 1] + (xs[k] - xs[k - 1]) / 2});
    }
  }
  return out;
}

void collect_leaf_rows(const DecisionTree& tree, const Dataset& sample,
                       std::vector<std::vector<Index>>& rows_per_node) {
  rows_per_node.assign(tree.nodes().size(), {});
  for (Index i = 0; i < sample.size(); ++i) {
    std::size_t node = 0;
    while (!tree.nodes()[node].is_leaf()) {
      const auto& n = tree.nodes()[node];
      node = sample.points()(i, n.split.dimension) <= n.split.threshold
                 ? static_cast<std::size_t>(n.left)
                 : static_cast<std::size_t>(n.right);
    }
    rows_per_node[node].push_back(i);
  }
}

// Counts the leaves whose region (intersection of split half-spaces along the
// root path) contains x; the partition property demands exactly one.
int leaves_containing(const DecisionTree& tree, const Vector& x) {
  int count = 0;
  std::function<void(std::size_t, bool)> walk = [&](std::size_t node, bool inside) {
    const auto& n = tree.nodes()[node];
    if (n.is_leaf()) {
      count += inside;
      return;
    }
    const bool goes_left = x[n.split.dimension] <= n.split.threshold;
    walk(static_cast<std::size_t>(n.left), inside && goes_left);
    walk(static_cast<std::size_t>(n.right), inside && !goes_left);
  };
  walk(0, true);
  return count;
}

Dataset random_dataset(Index n, Index d, SeededRng& rng) {
  Matrix pts(n, d);
  Vector vals(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) pts(i, j) = rng.uniform(-1.0, 1.0);
    vals[i] = rng.normal();
  }
  return Dataset(std::move(pts), std::move(vals));
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("deterministic split of two points lands on the midpoint") {
  const Dataset data = test::dataset_1d({0.0, 1.0}, {0.0, 1.0});
  const auto rule = best_split_deterministic(data, {0});
  REQUIRE(rule.has_value());
  CHECK(rule->dimension == 0);
  CHECK(rule->threshold == doctest::Approx(0.5));
}

TEST_CASE("deterministic split picks the larger variance reduction") {
  // Var(parent) = 8; splitting at 1.5 removes everything, at 0.5 leaves 6.
  const Dataset data = test::dataset_1d({0.0, 1.0, 2.0}, {0.0, 0.0, 6.0});
  const auto rule = best_split_deterministic(data, {0});
  REQUIRE(rule.has_value());
  CHECK(rule->threshold == doctest::Approx(1.5));
  CHECK(oracle_reduction(data, 0, 1.5) == doctest::Approx(8.0));
  CHECK(oracle_reduction(data, 0, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("constant candidate dimensions yield no split") {
  const Dataset data = test::dataset_1d({1.0, 1.0, 1.0}, {0.0, 1.0, 2.0});
  CHECK_FALSE(best_split_deterministic(data, {0}).has_value());
  SeededRng rng = derive_stream(0, 0);
  CHECK_FALSE(random_split(data, {0}, rng).has_value());
}

TEST_CASE("deterministic split maximizes the independently scored reduction") {
  SeededRng rng = derive_stream(2024, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset data = random_dataset(3 + static_cast<Index>(rng.uniform_index(18)), 3, rng);
    const std::vector<int> dims = {0, 1, 2};
    const auto rule = best_split_deterministic(data, dims);
    REQUIRE(rule.has_value());
    const Scalar chosen = oracle_reduction(data, rule->dimension, rule->threshold);
    for (const SplitRule& alt : enumerate_midpoints(data, dims)) {
      CHECK(chosen >= oracle_reduction(data, alt.dimension, alt.threshold) - 1e-10);
    }
  }
}

TEST_CASE("random split draws thresholds uniformly over the node range") {
  const Dataset data = test::dataset_1d({0.0, 1.0}, {0.0, 1.0});
  SeededRng rng = derive_stream(7, 0);
  std::vector<double> draws(100000);
  for (auto& t : draws) {
    const auto rule = random_split(data, {0}, rng);
    REQUIRE(rule.has_value());
    REQUIRE(rule->threshold > 0.0);
    REQUIRE(rule->threshold < 1.0);
    t = rule->threshold;
  }
  CHECK(test::ks_statistic(draws) < test::ks_critical_001(draws.size()));
}

TEST_CASE("two-point random split separates the points for any threshold") {
  const Dataset data = test::dataset_1d({0.0, 1.0}, {0.0, 1.0});
  SeededRng rng = derive_stream(13, 1);
  TreeConfig config;
  config.split_mode = SplitMode::kRandomLocation;
  const DecisionTree tree = build_tree(data, config, rng);
  REQUIRE(tree.leaf_count() == 2);
  CHECK(tree.route(test::vector_of({0.0})).mean == doctest::Approx(0.0));
  CHECK(tree.route(test::vector_of({1.0})).mean == doctest::Approx(1.0));
}

TEST_CASE("single point grows a single leaf") {
  const Dataset data = test::dataset_1d({0.3}, {2.5});
  SeededRng rng = derive_stream(1, 1);
  const DecisionTree tree = build_tree(data, TreeConfig{}, rng);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.route(test::vector_of({-5.0})).mean == doctest::Approx(2.5));
  CHECK(tree.route(test::vector_of({-5.0})).variance == doctest::Approx(0.0));
}

TEST_CASE("constant responses stop growth at the pure root") {
  const Dataset data = test::dataset_1d({0.0, 1.0, 2.0}, {4.0, 4.0, 4.0});
  SeededRng rng = derive_stream(1, 2);
  const DecisionTree tree = build_tree(data, TreeConfig{}, rng);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.route(test::vector_of({1.0})).mean == doctest::Approx(4.0));
}

TEST_CASE("a fully grown deterministic tree isolates every training point") {
  const Dataset data = test::dataset_1d({0.0, 1.0, 2.0, 3.0, 4.0}, {3.0, 1.0, 4.0, 2.0, 5.0});
  SeededRng rng = derive_stream(0, 3);
  TreeConfig config;
  config.max_features = MaxFeatures::all();
  const DecisionTree tree = build_tree(data, config, rng);
  CHECK(tree.leaf_count() == 5);

  std::vector<std::vector<Index>> rows;
  collect_leaf_rows(tree, data, rows);
  for (Index i = 0; i < data.size(); ++i) {
    const LeafStats& leaf = tree.route(data.points().row(i).transpose());
    CHECK(leaf.count == 1);
    CHECK(leaf.mean == data.values()[i]);
    CHECK(leaf.variance == 0.0);
  }
}

TEST_CASE("routing ties at the threshold go left") {
  std::vector<DecisionTree::Node> nodes(3);
  nodes[0].left = 1;
  nodes[0].right = 2;
  nodes[0].split = {0, 0.5};
  nodes[1].leaf = {-1.0, 0.0, 1};
  nodes[2].leaf = {+1.0, 0.0, 1};
  const DecisionTree tree(std::move(nodes));
  CHECK(tree.route(test::vector_of({0.2})).mean == -1.0);
  CHECK(tree.route(test::vector_of({0.8})).mean == +1.0);
  CHECK(tree.route(test::vector_of({0.5})).mean == -1.0);
}

TEST_CASE("leaf regions partition the space") {
  SeededRng rng = derive_stream(99, 0);
  const Dataset data = random_dataset(60, 2, rng);
  TreeConfig config;
  config.split_mode = SplitMode::kRandomLocation;
  const DecisionTree tree = build_tree(data, config, rng);

  for (int i = 0; i < 1000; ++i) {
    const Vector x = test::vector_of({rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
    CHECK(leaves_containing(tree, x) == 1);
    const LeafStats& routed = tree.route(x);
    CHECK(routed.count >= 1);
  }
}

TEST_CASE("stored leaf statistics match a recomputation from routed rows") {
  SeededRng rng = derive_stream(55, 0);
  for (SplitMode mode : {SplitMode::kDeterministicBest, SplitMode::kRandomLocation}) {
    const Dataset data = random_dataset(50, 3, rng);
    TreeConfig config;
    config.split_mode = mode;
    config.min_samples_leaf = 2;
    const DecisionTree tree = build_tree(data, config, rng);

    std::vector<std::vector<Index>> rows;
    collect_leaf_rows(tree, data, rows);
    for (std::size_t n = 0; n < tree.nodes().size(); ++n) {
      if (!tree.nodes()[n].is_leaf()) continue;
      const auto& members = rows[n];
      REQUIRE(static_cast<int>(members.size()) == tree.nodes()[n].leaf.count);
      Scalar mean = 0.0;
      for (Index r : members) mean += data.values()[r];
      mean /= static_cast<Scalar>(members.size());
      Scalar ssd = 0.0;
      for (Index r : members) ssd += std::pow(data.values()[r] - mean, 2);
      const Scalar variance = ssd / static_cast<Scalar>(members.size());
      CHECK(tree.nodes()[n].leaf.mean == doctest::Approx(mean).epsilon(1e-12));
      CHECK(tree.nodes()[n].leaf.variance == doctest::Approx(variance).epsilon(1e-12));
    }
  }
}

TEST_CASE("depth and leaf-size limits are honored") {
  SeededRng rng = derive_stream(21, 0);
  const Dataset data = random_dataset(200, 2, rng);
  TreeConfig config;
  config.max_depth = 3;
  config.min_samples_leaf = 5;
  const DecisionTree tree = build_tree(data, config, rng);
  CHECK(tree.leaf_count() <= 8);
  for (const auto& node : tree.nodes()) {
    if (node.is_leaf()) CHECK(node.leaf.count >= 5);
  }
}

}  // TEST_SUITE
