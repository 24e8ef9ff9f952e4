#include "treebo/acquisition.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "treebo/sobol.hpp"

namespace treebo {
namespace {

Scalar normal_cdf(Scalar z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

Scalar normal_pdf(Scalar z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

Scalar expected_improvement(const PredictiveDistribution& dist, Scalar best, Scalar xi) {
  if (xi < 0) throw std::invalid_argument("xi must be >= 0");
  const Scalar gap = best - dist.mean - xi;
  const Scalar sigma = std::sqrt(std::max(Scalar(0), dist.variance));
  if (sigma == 0.0) return std::max(Scalar(0), gap);
  const Scalar z = gap / sigma;
  return std::max(Scalar(0), gap * normal_cdf(z) + sigma * normal_pdf(z));
}

Matrix candidate_grid(const Bounds& bounds, Index n) {
  const int d = static_cast<int>(bounds.dim());
  Matrix pts = sobol_points(d, n);
  for (Index j = 0; j < bounds.dim(); ++j) {
    pts.col(j) = (pts.col(j).array() * bounds.span(j) + bounds.lower()[j]).matrix();
  }
  return pts;
}

Matrix random_candidates(const Bounds& bounds, Index n, SeededRng& rng) {
  Matrix pts(n, bounds.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < bounds.dim(); ++j) {
      pts(i, j) = rng.uniform(bounds.lower()[j], bounds.upper()[j]);
    }
  }
  return pts;
}

namespace {

struct ChunkArgmax {
  Index index = 0;
  Scalar ei = -1.0;
};

ChunkArgmax scan_chunk(const Surrogate& model, const Matrix& candidates, Index start,
                       Index count, Scalar best, Scalar xi) {
  Vector means, variances;
  model.predict_many(candidates.middleRows(start, count), means, variances);
  ChunkArgmax out{start, -1.0};
  for (Index i = 0; i < count; ++i) {
    const Scalar ei = expected_improvement({means[i], variances[i]}, best, xi);
    if (ei > out.ei) {  // strict: ties keep the lowest index
      out.ei = ei;
      out.index = start + i;
    }
  }
  return out;
}

}  // namespace

Vector propose(const Surrogate& model, const Bounds& bounds, Scalar best,
               const AcquisitionConfig& config) {
  if (config.n_candidates < 1) throw std::invalid_argument("n_candidates must be >= 1");
  if (!model.fitted()) throw std::logic_error("propose requires a fitted surrogate");

  const Matrix candidates = candidate_grid(bounds, config.n_candidates);
  const Index n = candidates.rows();

  // Fixed chunk boundaries and a lowest-index merge keep the result
  // independent of the evaluation schedule.
  const unsigned hw = std::thread::hardware_concurrency();
  const Index workers =
      n >= 8192 ? std::max<Index>(1, std::min<Index>(static_cast<Index>(hw), n / 4096)) : 1;

  ChunkArgmax winner;
  if (workers <= 1) {
    winner = scan_chunk(model, candidates, 0, n, best, config.xi);
  } else {
    std::vector<std::future<ChunkArgmax>> futures;
    const Index chunk = (n + workers - 1) / workers;
    for (Index start = 0; start < n; start += chunk) {
      const Index count = std::min(chunk, n - start);
      futures.push_back(std::async(std::launch::async, [&, start, count] {
        return scan_chunk(model, candidates, start, count, best, config.xi);
      }));
    }
    winner.ei = -1.0;
    for (auto& f : futures) {
      const ChunkArgmax local = f.get();
      if (local.ei > winner.ei || (local.ei == winner.ei && local.index < winner.index)) {
        winner = local;
      }
    }
  }
  return candidates.row(winner.index).transpose();
}

}  // namespace treebo
