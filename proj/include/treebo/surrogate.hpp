#ifndef TREEBO_SURROGATE_HPP
#define TREEBO_SURROGATE_HPP

#include <memory>
#include <optional>
#include <string>

#include "treebo/forest.hpp"
#include "treebo/gp.hpp"
#include "treebo/rng.hpp"
#include "treebo/types.hpp"

namespace treebo {

enum class SurrogateKind {
  kRf,
  kErt,
  kBwo,
  kBaggingOversampling,  // "b+o"
  kRandomSplitBagging,   // "r+b"
  kGp,
  kRandomSearch,  // baseline, not a model
};

SurrogateKind parse_surrogate_kind(const std::string& name);
std::string to_string(SurrogateKind kind);
bool is_tree_kind(SurrogateKind kind);

/// Probabilistic regression model standing in for the objective: refit from
/// scratch on every call to fit.
class Surrogate {
 public:
  virtual ~Surrogate() = default;
  virtual void fit(const Dataset& data, SeededRng rng) = 0;
  virtual bool fitted() const = 0;
  virtual PredictiveDistribution predict_at(const Vector& x) const = 0;
  virtual void predict_many(const Matrix& xs, Vector& means, Vector& variances) const;
};

class ForestSurrogate final : public Surrogate {
 public:
  explicit ForestSurrogate(ForestConfig config) : config_(std::move(config)) {}

  void fit(const Dataset& data, SeededRng rng) override;
  bool fitted() const override { return forest_.has_value(); }
  PredictiveDistribution predict_at(const Vector& x) const override;
  void predict_many(const Matrix& xs, Vector& means, Vector& variances) const override;

  const Forest& forest() const;

 private:
  ForestConfig config_;
  std::optional<Forest> forest_;
};

class GpSurrogate final : public Surrogate {
 public:
  explicit GpSurrogate(Bounds bounds) : bounds_(std::move(bounds)) {}

  void fit(const Dataset& data, SeededRng rng) override;
  bool fitted() const override { return model_.has_value(); }
  PredictiveDistribution predict_at(const Vector& x) const override;
  void predict_many(const Matrix& xs, Vector& means, Vector& variances) const override;

  const GpModel& model() const;

 private:
  Bounds bounds_;
  std::optional<GpModel> model_;
};

/// Model-backed kinds only; kRandomSearch has no surrogate and is handled by
/// the optimization driver.
std::unique_ptr<Surrogate> make_surrogate(SurrogateKind kind, const ForestConfig& forest_config,
                                          const Bounds& bounds);

}  // namespace treebo

#endif
