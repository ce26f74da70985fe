#include "cmaxpp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmaxpp {

AlphaSchedule::AlphaSchedule(Kind kind, double beta1, double param, int horizon)
    : kind_(kind), beta1_(beta1), param_(param), horizon_(horizon) {}

AlphaSchedule AlphaSchedule::constant(double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  return {Kind::kConstant, 0.0, alpha, 0};
}

AlphaSchedule AlphaSchedule::exponential(double beta1, double rho) {
  if (beta1 < 0.0) throw std::invalid_argument("beta1 must be >= 0");
  if (rho <= 0.0 || rho >= 1.0)
    throw std::invalid_argument("rho must be in (0, 1)");
  return {Kind::kExponential, beta1, rho, 0};
}

AlphaSchedule AlphaSchedule::linear(double beta1, int horizon) {
  if (beta1 < 0.0) throw std::invalid_argument("beta1 must be >= 0");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return {Kind::kLinear, beta1, 0.0, horizon};
}

AlphaSchedule AlphaSchedule::time_decay(double beta1) {
  if (beta1 < 0.0) throw std::invalid_argument("beta1 must be >= 0");
  return {Kind::kTimeDecay, beta1, 0.0, 0};
}

AlphaSchedule AlphaSchedule::step(double beta1, int frequency, int horizon) {
  if (beta1 < 0.0) throw std::invalid_argument("beta1 must be >= 0");
  if (frequency < 1) throw std::invalid_argument("frequency must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return {Kind::kStep, beta1, static_cast<double>(frequency), horizon};
}

AlphaSchedule AlphaSchedule::nav_default() {
  return {Kind::kNav, 100.0, 0.0, 0};
}

double AlphaSchedule::alpha(int i) const {
  if (i < 1) throw std::invalid_argument("repetition index must be >= 1");
  double beta = 0.0;
  switch (kind_) {
    case Kind::kConstant:
      return param_;
    case Kind::kExponential:
      beta = beta1_ * std::pow(param_, i - 1);
      break;
    case Kind::kLinear:
      beta = beta1_ - static_cast<double>(i) * beta1_ / horizon_;
      break;
    case Kind::kTimeDecay:
      beta = beta1_ / static_cast<double>(i);
      break;
    case Kind::kStep: {
      const int freq = static_cast<int>(param_);
      const double decrement = beta1_ * param_ / horizon_;
      beta = beta1_ - static_cast<double>(i / freq) * decrement;
      break;
    }
    case Kind::kNav:
      beta = beta1_ - 2.5 * static_cast<double>((i - 1) / 5);
      break;
  }
  return 1.0 + std::max(0.0, beta);
}

std::string AlphaSchedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kConstant:
      os << "constant(alpha=" << param_ << ")";
      break;
    case Kind::kExponential:
      os << "exponential(beta1=" << beta1_ << ",rho=" << param_ << ")";
      break;
    case Kind::kLinear:
      os << "linear(beta1=" << beta1_ << ",horizon=" << horizon_ << ")";
      break;
    case Kind::kTimeDecay:
      os << "time_decay(beta1=" << beta1_ << ")";
      break;
    case Kind::kStep:
      os << "step(beta1=" << beta1_ << ",freq=" << static_cast<int>(param_)
         << ",horizon=" << horizon_ << ")";
      break;
    case Kind::kNav:
      os << "nav_default";
      break;
  }
  return os.str();
}

}  // namespace cmaxpp
