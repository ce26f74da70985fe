#include "cmaxpp/approximator.hpp"

#include <cmath>
#include <stdexcept>

namespace cmaxpp {

namespace {
void check_targets_finite(double target) {
  if (!std::isfinite(target))
    throw std::invalid_argument("non-finite training target");
}
}  // namespace

TabularValueApproximator::TabularValueApproximator(std::int64_t num_states,
                                                  HeuristicFn base)
    : base_(static_cast<std::size_t>(num_states), 0.0),
      residual_(static_cast<std::size_t>(num_states), 0.0) {
  if (base) {
    for (std::int64_t s = 0; s < num_states; ++s)
      base_[s] = base(static_cast<StateId>(s));
  }
}

double TabularValueApproximator::evaluate(StateId s) const {
  return base_[s] + residual_[s];
}

double TabularValueApproximator::loss(const TrainingSet& ts) const {
  if (ts.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& [s, target] : ts) {
    const double err = target - evaluate(s);
    acc += err * err;
  }
  return acc / (2.0 * static_cast<double>(ts.size()));
}

double TabularValueApproximator::fit(const TrainingSet& ts, double eta) {
  if (ts.empty()) return 0.0;
  const double pre = loss(ts);
  const double scale = eta / static_cast<double>(ts.size());
  for (const auto& [s, target] : ts) {
    check_targets_finite(target);
    residual_[s] += scale * (target - evaluate(s));
  }
  return pre;
}

void TabularValueApproximator::set_parameters(const std::vector<double>& p) {
  if (p.size() != residual_.size())
    throw std::invalid_argument("parameter shape mismatch");
  residual_ = p;
}

TabularQApproximator::TabularQApproximator(std::int64_t num_states,
                                           std::int32_t num_actions,
                                           QHeuristicFn base)
    : num_actions_(num_actions),
      base_(static_cast<std::size_t>(num_states) * num_actions, 0.0),
      residual_(static_cast<std::size_t>(num_states) * num_actions, 0.0) {
  if (base) {
    for (std::int64_t s = 0; s < num_states; ++s)
      for (ActionId a = 0; a < num_actions; ++a)
        base_[index(static_cast<StateId>(s), a)] =
            base(static_cast<StateId>(s), a);
  }
}

double TabularQApproximator::evaluate(StateId s, ActionId a) const {
  return base_[index(s, a)] + residual_[index(s, a)];
}

double TabularQApproximator::loss(const TrainingSet& ts) const {
  if (ts.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& [s, a, target] : ts) {
    const double err = target - evaluate(s, a);
    acc += err * err;
  }
  return acc / (2.0 * static_cast<double>(ts.size()));
}

double TabularQApproximator::fit(const TrainingSet& ts, double eta) {
  if (ts.empty()) return 0.0;
  const double pre = loss(ts);
  const double scale = eta / static_cast<double>(ts.size());
  for (const auto& [s, a, target] : ts) {
    check_targets_finite(target);
    residual_[index(s, a)] += scale * (target - evaluate(s, a));
  }
  return pre;
}

void TabularQApproximator::set_parameters(const std::vector<double>& p) {
  if (p.size() != residual_.size())
    throw std::invalid_argument("parameter shape mismatch");
  residual_ = p;
}

LinearValueApproximator::LinearValueApproximator(int num_features,
                                                 FeatureFn features,
                                                 HeuristicFn base)
    : features_(std::move(features)),
      base_(std::move(base)),
      weights_(static_cast<std::size_t>(num_features), 0.0) {
  if (!features_) throw std::invalid_argument("feature map required");
}

double LinearValueApproximator::evaluate(StateId s) const {
  const std::vector<double> phi = features_(s);
  if (phi.size() != weights_.size())
    throw std::invalid_argument("feature vector shape mismatch");
  double acc = base_ ? base_(s) : 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) acc += weights_[i] * phi[i];
  return acc;
}

double LinearValueApproximator::loss(const TrainingSet& ts) const {
  if (ts.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& [s, target] : ts) {
    const double err = target - evaluate(s);
    acc += err * err;
  }
  return acc / (2.0 * static_cast<double>(ts.size()));
}

double LinearValueApproximator::fit(const TrainingSet& ts, double eta) {
  if (ts.empty()) return 0.0;
  const double pre = loss(ts);
  std::vector<double> grad(weights_.size(), 0.0);
  for (const auto& [s, target] : ts) {
    check_targets_finite(target);
    const double err = target - evaluate(s);
    const std::vector<double> phi = features_(s);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= err * phi[i];
  }
  const double scale = eta / static_cast<double>(ts.size());
  for (std::size_t i = 0; i < weights_.size(); ++i)
    weights_[i] -= scale * grad[i];
  return pre;
}

void LinearValueApproximator::set_parameters(const std::vector<double>& p) {
  if (p.size() != weights_.size())
    throw std::invalid_argument("parameter shape mismatch");
  weights_ = p;
}

LinearQApproximator::LinearQApproximator(std::int32_t num_actions,
                                         int num_features, FeatureFn features,
                                         QHeuristicFn base)
    : num_actions_(num_actions),
      num_features_(num_features),
      features_(std::move(features)),
      base_(std::move(base)),
      weights_(static_cast<std::size_t>(num_actions) * num_features, 0.0) {
  if (!features_) throw std::invalid_argument("feature map required");
}

double LinearQApproximator::evaluate(StateId s, ActionId a) const {
  const std::vector<double> phi = features_(s);
  if (static_cast<int>(phi.size()) != num_features_)
    throw std::invalid_argument("feature vector shape mismatch");
  double acc = base_ ? base_(s, a) : 0.0;
  const std::size_t row = static_cast<std::size_t>(a) * num_features_;
  for (int i = 0; i < num_features_; ++i) acc += weights_[row + i] * phi[i];
  return acc;
}

double LinearQApproximator::loss(const TrainingSet& ts) const {
  if (ts.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& [s, a, target] : ts) {
    const double err = target - evaluate(s, a);
    acc += err * err;
  }
  return acc / (2.0 * static_cast<double>(ts.size()));
}

double LinearQApproximator::fit(const TrainingSet& ts, double eta) {
  if (ts.empty()) return 0.0;
  const double pre = loss(ts);
  std::vector<double> grad(weights_.size(), 0.0);
  for (const auto& [s, a, target] : ts) {
    check_targets_finite(target);
    const double err = target - evaluate(s, a);
    const std::vector<double> phi = features_(s);
    const std::size_t row = static_cast<std::size_t>(a) * num_features_;
    for (int i = 0; i < num_features_; ++i) grad[row + i] -= err * phi[i];
  }
  const double scale = eta / static_cast<double>(ts.size());
  for (std::size_t i = 0; i < weights_.size(); ++i)
    weights_[i] -= scale * grad[i];
  return pre;
}

void LinearQApproximator::set_parameters(const std::vector<double>& p) {
  if (p.size() != weights_.size())
    throw std::invalid_argument("parameter shape mismatch");
  weights_ = p;
}

std::vector<double> polyak_update(const std::vector<double>& target_params,
                                  const std::vector<double>& online_params,
                                  double tau) {
  if (target_params.size() != online_params.size())
    throw std::invalid_argument("parameter shape mismatch");
  if (tau <= 0.0 || tau > 1.0)
    throw std::invalid_argument("tau must be in (0, 1]");
  std::vector<double> merged(target_params.size());
  for (std::size_t i = 0; i < merged.size(); ++i)
    merged[i] = tau * online_params[i] + (1.0 - tau) * target_params[i];
  return merged;
}

}  // namespace cmaxpp
