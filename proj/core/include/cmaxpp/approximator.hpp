#pragma once

#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "cmaxpp/problem.hpp"

namespace cmaxpp {

using FeatureFn = std::function<std::vector<double>(StateId)>;
using HeuristicFn = std::function<double(StateId)>;

/// Cost-to-goal representation: a fixed base heuristic plus a trainable
/// residual, trained by gradient steps on a mean-squared loss
/// L = 1/(2|T|) sum (target - prediction)^2. The residual predicts 0 at
/// initialization so the initial output equals the base heuristic.
class ValueApproximator {
 public:
  using TrainingSet = std::vector<std::pair<StateId, double>>;

  virtual ~ValueApproximator() = default;
  virtual double evaluate(StateId s) const = 0;
  /// One gradient step with rate eta; returns the pre-step loss.
  virtual double fit(const TrainingSet& ts, double eta) = 0;
  virtual double loss(const TrainingSet& ts) const = 0;
  virtual std::vector<double> parameters() const = 0;
  virtual void set_parameters(const std::vector<double>& p) = 0;
};

/// Q analog: one value per (state, action).
class QApproximator {
 public:
  using TrainingSet = std::vector<std::tuple<StateId, ActionId, double>>;

  virtual ~QApproximator() = default;
  virtual double evaluate(StateId s, ActionId a) const = 0;
  virtual double fit(const TrainingSet& ts, double eta) = 0;
  virtual double loss(const TrainingSet& ts) const = 0;
  virtual std::vector<double> parameters() const = 0;
  virtual void set_parameters(const std::vector<double>& p) = 0;
};

/// Dense table; gradient steps treat each entry as a one-hot weight, so a
/// step with eta = |T| (distinct states) solves the targets exactly.
class TabularValueApproximator final : public ValueApproximator {
 public:
  TabularValueApproximator(std::int64_t num_states, HeuristicFn base = nullptr);

  double evaluate(StateId s) const override;
  double fit(const TrainingSet& ts, double eta) override;
  double loss(const TrainingSet& ts) const override;
  std::vector<double> parameters() const override { return residual_; }
  void set_parameters(const std::vector<double>& p) override;

 private:
  std::vector<double> base_;
  std::vector<double> residual_;
};

/// Dense Q table with the same one-hot gradient semantics.
class TabularQApproximator final : public QApproximator {
 public:
  using QHeuristicFn = std::function<double(StateId, ActionId)>;
  TabularQApproximator(std::int64_t num_states, std::int32_t num_actions,
                       QHeuristicFn base = nullptr);

  double evaluate(StateId s, ActionId a) const override;
  double fit(const TrainingSet& ts, double eta) override;
  double loss(const TrainingSet& ts) const override;
  std::vector<double> parameters() const override { return residual_; }
  void set_parameters(const std::vector<double>& p) override;

 private:
  std::size_t index(StateId s, ActionId a) const {
    return static_cast<std::size_t>(s) * num_actions_ + a;
  }
  std::int32_t num_actions_;
  std::vector<double> base_;
  std::vector<double> residual_;
};

/// Linear residual over an environment-supplied feature map.
class LinearValueApproximator final : public ValueApproximator {
 public:
  LinearValueApproximator(int num_features, FeatureFn features,
                          HeuristicFn base = nullptr);

  double evaluate(StateId s) const override;
  double fit(const TrainingSet& ts, double eta) override;
  double loss(const TrainingSet& ts) const override;
  std::vector<double> parameters() const override { return weights_; }
  void set_parameters(const std::vector<double>& p) override;

 private:
  FeatureFn features_;
  HeuristicFn base_;
  std::vector<double> weights_;
};

/// Linear residual with one weight row per action over a shared state
/// feature vector.
class LinearQApproximator final : public QApproximator {
 public:
  using QHeuristicFn = std::function<double(StateId, ActionId)>;
  LinearQApproximator(std::int32_t num_actions, int num_features,
                      FeatureFn features, QHeuristicFn base = nullptr);

  double evaluate(StateId s, ActionId a) const override;
  double fit(const TrainingSet& ts, double eta) override;
  double loss(const TrainingSet& ts) const override;
  std::vector<double> parameters() const override { return weights_; }
  void set_parameters(const std::vector<double>& p) override;

 private:
  std::int32_t num_actions_;
  int num_features_;
  FeatureFn features_;
  QHeuristicFn base_;
  std::vector<double> weights_;  // row-major, num_actions x num_features
};

/// merged = tau * online + (1 - tau) * target, elementwise.
std::vector<double> polyak_update(const std::vector<double>& target_params,
                                  const std::vector<double>& online_params,
                                  double tau);

}  // namespace cmaxpp
