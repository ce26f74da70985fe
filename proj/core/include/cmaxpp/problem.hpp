#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cmaxpp {

/// Dense index into an enumerable state space, 0 <= id < num_states.
using StateId = std::int32_t;
/// Index into the discrete action set, 0 <= id < num_actions.
using ActionId = std::int32_t;

using StepFn = std::function<StateId(StateId, ActionId)>;
using CostFn = std::function<double(StateId, ActionId)>;
using MetricFn = std::function<double(StateId, StateId)>;

class UnsolvableModelError : public std::runtime_error {
 public:
  explicit UnsolvableModelError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Deterministic shortest-path planning model: enumerable states, a discrete
/// action set, a non-empty goal set, total deterministic dynamics, and
/// transition costs in [0, 1].
class Problem {
 public:
  Problem() = default;
  Problem(std::int64_t num_states, std::int32_t num_actions,
          std::vector<StateId> goals, StepFn model_step, CostFn cost);

  std::int64_t num_states() const { return num_states_; }
  std::int32_t num_actions() const { return num_actions_; }
  const std::vector<StateId>& goals() const { return goals_; }
  bool is_goal(StateId s) const { return goal_set_.count(s) > 0; }

  StateId model_step(StateId s, ActionId a) const { return model_step_(s, a); }
  double cost(StateId s, ActionId a) const { return cost_(s, a); }

  /// Replaces the cost function, keeping dynamics and goals.
  Problem with_cost(CostFn cost) const;

 private:
  std::int64_t num_states_ = 0;
  std::int32_t num_actions_ = 0;
  std::vector<StateId> goals_;
  std::unordered_set<StateId> goal_set_;
  StepFn model_step_;
  CostFn cost_;
};

/// Tabular cost-to-goal estimate with V(g) pinned to 0 on goals.
class ValueStore {
 public:
  ValueStore() = default;
  ValueStore(std::int64_t num_states, const std::vector<StateId>& goals,
             double init = 0.0);
  explicit ValueStore(const Problem& p, double init = 0.0)
      : ValueStore(p.num_states(), p.goals(), init) {}
  /// Seeds from a dense table (e.g. the Dijkstra oracle). Goals forced to 0.
  ValueStore(const Problem& p, std::vector<double> table);

  double get(StateId s) const { return values_[s]; }
  /// Writes are ignored on goal states, which stay at 0.
  void set(StateId s, double v);
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

 private:
  std::vector<double> values_;
  std::unordered_set<StateId> goal_set_;
};

/// Sparse Q(s, a) estimates. Reading a pair that was never written is a logic
/// error: the search only consults Q for transitions in the incorrect set,
/// and those are written the moment they are discovered.
class QStore {
 public:
  QStore() = default;
  explicit QStore(std::int32_t num_actions) : num_actions_(num_actions) {}

  void set(StateId s, ActionId a, double q);
  double get(StateId s, ActionId a) const;
  bool has(StateId s, ActionId a) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::int64_t key(StateId s, ActionId a) const {
    return static_cast<std::int64_t>(s) * num_actions_ + a;
  }
  std::int32_t num_actions_ = 1;
  std::unordered_map<std::int64_t, double> table_;
};

class IncorrectSetBase;

/// Cost view where transitions in the incorrect set are priced at a large
/// penalty (default |S|) and all others pass through to the base cost.
class PenalizedCostView {
 public:
  /// penalty <= 0 selects the default penalty of |S|.
  PenalizedCostView(const Problem& base, const IncorrectSetBase& incorrect,
                    double penalty = 0.0);

  double cost(StateId s, ActionId a) const;
  double penalty() const { return penalty_; }

  /// A Problem with this view's cost function. The view (and the base problem
  /// and incorrect set behind it) must outlive the returned Problem.
  Problem as_problem() const;

 private:
  const Problem* base_;
  const IncorrectSetBase* incorrect_;
  double penalty_;
};

inline double penalized_cost(const PenalizedCostView& view, StateId s,
                             ActionId a) {
  return view.cost(s, a);
}

/// True iff the executed outcome is farther than xi from the model's
/// prediction (strict inequality).
inline bool is_discrepant(StateId s_true, StateId s_pred, double xi,
                          const MetricFn& d) {
  return d(s_true, s_pred) > xi;
}

}  // namespace cmaxpp
