#pragma once

#include <string>

namespace cmaxpp {

/// Non-increasing sequence alpha_i = 1 + beta_i >= 1 governing the
/// penalized/Q-integrated action switch. beta never goes below zero.
class AlphaSchedule {
 public:
  enum class Kind { kConstant, kExponential, kLinear, kTimeDecay, kStep, kNav };

  /// alpha_i = alpha for all i; alpha may be +infinity.
  static AlphaSchedule constant(double alpha);
  /// beta_i = beta1 * rho^(i-1), 0 < rho < 1.
  static AlphaSchedule exponential(double beta1, double rho);
  /// beta_i = max(0, beta1 - i * beta1/horizon); reaches alpha = 1 at
  /// i = horizon.
  static AlphaSchedule linear(double beta1, int horizon = 200);
  /// beta_i = beta1 / i.
  static AlphaSchedule time_decay(double beta1);
  /// beta decremented by beta1*frequency/horizon every `frequency`
  /// repetitions; reaches alpha = 1 at i = horizon.
  static AlphaSchedule step(double beta1, int frequency, int horizon = 200);
  /// beta1 = 100, decreased by 2.5 after every 5 repetitions.
  static AlphaSchedule nav_default();

  /// alpha_i for repetition i >= 1.
  double alpha(int i) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  AlphaSchedule(Kind kind, double beta1, double param, int horizon);

  Kind kind_;
  double beta1_;
  double param_;  // rho for exponential, frequency for step, alpha for const
  int horizon_;
};

}  // namespace cmaxpp
