#include "treebo/surrogate.hpp"

#include <stdexcept>

namespace treebo {

SurrogateKind parse_surrogate_kind(const std::string& name) {
  if (name == "rf") return SurrogateKind::kRf;
  if (name == "ert") return SurrogateKind::kErt;
  if (name == "bwo") return SurrogateKind::kBwo;
  if (name == "b+o") return SurrogateKind::kBaggingOversampling;
  if (name == "r+b") return SurrogateKind::kRandomSplitBagging;
  if (name == "gp") return SurrogateKind::kGp;
  if (name == "random") return SurrogateKind::kRandomSearch;
  throw std::invalid_argument("unknown surrogate kind: " + name);
}

std::string to_string(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::kRf: return "rf";
    case SurrogateKind::kErt: return "ert";
    case SurrogateKind::kBwo: return "bwo";
    case SurrogateKind::kBaggingOversampling: return "b+o";
    case SurrogateKind::kRandomSplitBagging: return "r+b";
    case SurrogateKind::kGp: return "gp";
    case SurrogateKind::kRandomSearch: return "random";
  }
  return "?";
}

bool is_tree_kind(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::kRf:
    case SurrogateKind::kErt:
    case SurrogateKind::kBwo:
    case SurrogateKind::kBaggingOversampling:
    case SurrogateKind::kRandomSplitBagging:
      return true;
    default:
      return false;
  }
}

void Surrogate::predict_many(const Matrix& xs, Vector& means, Vector& variances) const {
  means.resize(xs.rows());
  variances.resize(xs.rows());
  for (Index i = 0; i < xs.rows(); ++i) {
    const PredictiveDistribution d = predict_at(xs.row(i).transpose());
    means[i] = d.mean;
    variances[i] = d.variance;
  }
}

void ForestSurrogate::fit(const Dataset& data, SeededRng rng) {
  forest_ = fit_forest(data, config_, rng);
}

PredictiveDistribution ForestSurrogate::predict_at(const Vector& x) const {
  return predict(forest(), x);
}

void ForestSurrogate::predict_many(const Matrix& xs, Vector& means, Vector& variances) const {
  treebo::predict_many(forest(), xs, means, variances);
}

const Forest& ForestSurrogate::forest() const {
  if (!forest_) throw std::logic_error("surrogate not fitted");
  return *forest_;
}

void GpSurrogate::fit(const Dataset& data, SeededRng) { model_ = fit_gp(data, bounds_); }

PredictiveDistribution GpSurrogate::predict_at(const Vector& x) const {
  return model().predict(x);
}

void GpSurrogate::predict_many(const Matrix& xs, Vector& means, Vector& variances) const {
  model().predict_many(xs, means, variances);
}

const GpModel& GpSurrogate::model() const {
  if (!model_) throw std::logic_error("surrogate not fitted");
  return *model_;
}

std::unique_ptr<Surrogate> make_surrogate(SurrogateKind kind, const ForestConfig& forest_config,
                                          const Bounds& bounds) {
  if (is_tree_kind(kind)) return std::make_unique<ForestSurrogate>(forest_config);
  if (kind == SurrogateKind::kGp) return std::make_unique<GpSurrogate>(bounds);
  throw std::invalid_argument("no surrogate model behind kind " + to_string(kind));
}

}  // namespace treebo
