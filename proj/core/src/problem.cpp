#include "cmaxpp/problem.hpp"

#include "cmaxpp/incorrect_set.hpp"

namespace cmaxpp {

Problem::Problem(std::int64_t num_states, std::int32_t num_actions,
                 std::vector<StateId> goals, StepFn model_step, CostFn cost)
    : num_states_(num_states),
      num_actions_(num_actions),
      goals_(std::move(goals)),
      model_step_(std::move(model_step)),
      cost_(std::move(cost)) {
  if (num_states_ <= 0) throw std::invalid_argument("num_states must be > 0");
  if (num_actions_ <= 0) throw std::invalid_argument("num_actions must be > 0");
  if (goals_.empty()) throw std::invalid_argument("goal set must be non-empty");
  for (StateId g : goals_) {
    if (g < 0 || g >= num_states_)
      throw std::invalid_argument("goal id out of range");
    goal_set_.insert(g);
  }
  if (!model_step_ || !cost_)
    throw std::invalid_argument("model_step and cost must be callable");
}

Problem Problem::with_cost(CostFn cost) const {
  Problem p(*this);
  p.cost_ = std::move(cost);
  return p;
}

ValueStore::ValueStore(std::int64_t num_states,
                       const std::vector<StateId>& goals, double init)
    : values_(static_cast<std::size_t>(num_states), init),
      goal_set_(goals.begin(), goals.end()) {
  for (StateId g : goals) values_[g] = 0.0;
}

ValueStore::ValueStore(const Problem& p, std::vector<double> table)
    : values_(std::move(table)),
      goal_set_(p.goals().begin(), p.goals().end()) {
  if (static_cast<std::int64_t>(values_.size()) != p.num_states())
    throw std::invalid_argument("value table size mismatch");
  for (StateId g : p.goals()) values_[g] = 0.0;
}

void ValueStore::set(StateId s, double v) {
  if (goal_set_.count(s) > 0) return;
  values_[s] = v;
}

void QStore::set(StateId s, ActionId a, double q) { table_[key(s, a)] = q; }

double QStore::get(StateId s, ActionId a) const {
  auto it = table_.find(key(s, a));
  if (it == table_.end())
    throw std::logic_error("QStore::get on a pair that was never written");
  return it->second;
}

bool QStore::has(StateId s, ActionId a) const {
  return table_.count(key(s, a)) > 0;
}

PenalizedCostView::PenalizedCostView(const Problem& base,
                                     const IncorrectSetBase& incorrect,
                                     double penalty)
    : base_(&base),
      incorrect_(&incorrect),
      penalty_(penalty > 0.0 ? penalty
                             : static_cast<double>(base.num_states())) {}

double PenalizedCostView::cost(StateId s, ActionId a) const {
  if (incorrect_->contains(s, a)) return penalty_;
  return base_->cost(s, a);
}

Problem PenalizedCostView::as_problem() const {
  const PenalizedCostView* view = this;
  return base_->with_cost(
      [view](StateId s, ActionId a) { return view->cost(s, a); });
}

}  // namespace cmaxpp
