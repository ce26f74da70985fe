#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "cmaxpp/approximator.hpp"
#include "cmaxpp/env.hpp"
#include "cmaxpp/incorrect_set.hpp"
#include "cmaxpp/problem.hpp"
#include "cmaxpp/schedule.hpp"
#include "cmaxpp/search.hpp"

namespace cmaxpp {

struct DiscrepancyEvent {
  int t;
  StateId state;
  ActionId action;
  StateId predicted;
  StateId actual;
};

/// Which planner produced the executed action.
enum class ActionSource : char { kCmaxpp = 'p', kCmax = 'c', kQLearning = 'q' };

struct StepResult {
  ActionId action = -1;
  StateId next_state = -1;
  StateId predicted = -1;
  double cost = 0.0;
  bool discrepant = false;
  ActionSource source = ActionSource::kCmaxpp;
};

struct RepetitionRecord {
  int repetition = 0;
  std::int64_t steps = 0;
  double total_cost = 0.0;
  bool success = false;
  std::vector<DiscrepancyEvent> events;
  std::vector<ActionSource> action_sources;
};

enum class ValueInit { kZero, kModelOptimal };

struct TabularAgentOptions {
  int expansion_budget = 10;
  /// <= 0 selects the default penalty of |S|.
  double penalty = 0.0;
  ValueInit value_init = ValueInit::kZero;
};

/// One agent owns one environment run; experience (V, Q, X) persists across
/// repetitions, never across agents.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_repetition(int /*repetition*/) {}
  /// Executes one plan-act-update cycle from s (s must not be a goal).
  virtual StepResult step(StateId s) = 0;
  virtual const char* name() const = 0;
  const Env& env() const { return *env_; }

 protected:
  explicit Agent(const Env& env) : env_(&env) {}
  const Env* env_;
};

/// Plans on the unpenalized model with Q-priced dummy leaves for discovered
/// incorrect transitions; on a discrepancy, records the pair and sets
/// Q(s, a) = c(s, a) + V(s') from the observed successor.
class CmaxppAgent final : public Agent {
 public:
  CmaxppAgent(const Env& env, TabularAgentOptions opts = {});

  StepResult step(StateId s) override;
  const char* name() const override { return "cmaxpp"; }

  const ValueStore& values() const { return v_; }
  const QStore& q_values() const { return q_; }
  const ExactIncorrectSet& incorrect() const { return x_; }

 private:
  TabularAgentOptions opts_;
  ValueStore v_;
  QStore q_;
  ExactIncorrectSet x_;
};

/// Plans on the penalized model only (no dummy leaves); discrepancies grow
/// the incorrect set, inflating those costs for all later plans.
class CmaxAgent final : public Agent {
 public:
  CmaxAgent(const Env& env, TabularAgentOptions opts = {});

  StepResult step(StateId s) override;
  const char* name() const override { return "cmax"; }

  const ValueStore& values() const { return v_; }
  const ExactIncorrectSet& incorrect() const { return x_; }

 private:
  TabularAgentOptions opts_;
  ValueStore v_;
  ExactIncorrectSet x_;
  PenalizedCostView penalized_;
  Problem penalized_problem_;
};

/// The A-CMAX++ switch: take the penalized-model action while its value
/// estimate stays within a factor alpha of the Q-integrated one. alpha may
/// be +infinity (always penalized), which sidesteps inf * 0.
inline bool prefers_penalized(double v_pen, double v, double alpha) {
  return std::isinf(alpha) || v_pen <= alpha * v;
}

/// Runs both planners every step and executes the penalized-model action
/// while Vpen(s) <= alpha_i * V(s), falling back to the Q-integrated action
/// otherwise. Both value stores receive their own update batches.
class AcmaxppAgent final : public Agent {
 public:
  AcmaxppAgent(const Env& env, AlphaSchedule schedule,
               TabularAgentOptions opts = {});

  void begin_repetition(int repetition) override;
  StepResult step(StateId s) override;
  const char* name() const override { return "acmaxpp"; }

  const ValueStore& values() const { return v_; }
  const ValueStore& penalized_values() const { return v_pen_; }
  const QStore& q_values() const { return q_; }
  const ExactIncorrectSet& incorrect() const { return x_; }
  double alpha() const { return alpha_; }

 private:
  TabularAgentOptions opts_;
  AlphaSchedule schedule_;
  double alpha_;
  ValueStore v_;
  ValueStore v_pen_;
  QStore q_;
  ExactIncorrectSet x_;
  PenalizedCostView penalized_;
  Problem penalized_problem_;
};

/// Greedy deterministic Q-learning with Q initialized from the model:
/// Q(s, a) = c(s, a) + V0(model_step(s, a)), V0 from planning in the model.
class QLearningAgent final : public Agent {
 public:
  explicit QLearningAgent(const Env& env);

  StepResult step(StateId s) override;
  const char* name() const override { return "qlearning"; }

  double q(StateId s, ActionId a) const { return q_[index(s, a)]; }

 private:
  std::size_t index(StateId s, ActionId a) const {
    return static_cast<std::size_t>(s) * num_actions_ + a;
  }
  double min_q(StateId s) const;

  std::int32_t num_actions_;
  std::vector<double> q_;
};

struct Transition {
  StateId state;
  ActionId action;
  StateId next;
};

/// One gradient step of the Q approximator toward targets
/// c(s, a) + V(s') over a batch sampled with replacement. Returns the
/// pre-step loss; an empty buffer is a warned no-op.
double q_update(QApproximator& q, const ValueApproximator& v,
                const Problem& problem, const std::vector<Transition>& buffer,
                int batch_size, double eta, std::mt19937_64& rng);

/// One gradient step of the V approximator toward search-derived targets
/// (closed state, p_best - g) harvested from read-only searches rooted at a
/// batch of sampled states. Sampled goal states are skipped.
double v_update(ValueApproximator& v, const QApproximator& q,
                const Problem& problem, const std::vector<StateId>& buffer,
                const IncorrectSetBase& incorrect, int batch_size, double eta,
                int expansion_budget, std::mt19937_64& rng);

struct LargeAgentOptions {
  int expansion_budget = 5;
  double radius = 3.0;
  double xi = 0.0;
  int batch_size = 16;
  double eta = 0.001;
  int updates_v = 3;
  int updates_q = 5;
  std::uint64_t seed = 0;
  SphereMetric metric = SphereMetric::kManhattan;
};

/// Large-state-space variant: hypersphere incorrect set, replay buffers,
/// and approximated value functions trained after every executed step.
class LargeCmaxppAgent final : public Agent {
 public:
  LargeCmaxppAgent(const Env& env, ValueApproximator& v, QApproximator& q,
                   LargeAgentOptions opts = {});

  StepResult step(StateId s) override;
  const char* name() const override { return "cmaxpp-large"; }

  const HypersphereSet& incorrect() const { return x_; }
  const std::vector<Transition>& transition_buffer() const { return d_sa_; }
  const std::vector<StateId>& state_buffer() const { return d_s_; }

 private:
  LargeAgentOptions opts_;
  ValueApproximator* v_;
  QApproximator* q_;
  HypersphereSet x_;
  std::vector<StateId> d_s_;
  std::vector<Transition> d_sa_;
  std::mt19937_64 rng_;
};

using StepObserver =
    std::function<void(const Agent& agent, int t, StateId state,
                       const StepResult& result)>;

/// Steps the agent from env.start() until a goal or the step cap. Search
/// unsolvability is recorded as a failed repetition, not an error.
RepetitionRecord run_repetition(Agent& agent, int step_cap, int repetition = 1,
                                const StepObserver& observer = nullptr);

/// Up to N repetitions; by default the sequence aborts after the first
/// failed repetition.
std::vector<RepetitionRecord> run_task(Agent& agent, int repetitions,
                                       int step_cap,
                                       bool abort_on_failure = true,
                                       const StepObserver& observer = nullptr);

}  // namespace cmaxpp
