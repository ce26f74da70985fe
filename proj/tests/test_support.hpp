#pragma once

// Shared fixtures: a table-driven toy environment and an independent
// reference RTAA* used to cross-check the production search.

#include <stdexcept>
#include <utility>
#include <vector>

#include "cmaxpp/env.hpp"
#include "cmaxpp/problem.hpp"

namespace testsupport {

using cmaxpp::ActionId;
using cmaxpp::StateId;

/// Environment defined by explicit model and true transition tables,
/// indexed s * num_actions + a. Unit costs unless a cost table is given.
class TableEnv final : public cmaxpp::Env {
 public:
  TableEnv(std::int64_t num_states, std::int32_t num_actions,
           std::vector<StateId> goals, StateId start,
           std::vector<StateId> model, std::vector<StateId> truth,
           std::vector<double> costs = {})
      : start_(start), truth_(std::move(truth)), num_actions_(num_actions) {
    if (static_cast<std::int64_t>(model.size()) != num_states * num_actions ||
        truth_.size() != model.size())
      throw std::invalid_argument("transition table size mismatch");
    auto model_table = std::make_shared<std::vector<StateId>>(std::move(model));
    auto cost_table = std::make_shared<std::vector<double>>(std::move(costs));
    problem_ = cmaxpp::Problem(
        num_states, num_actions, std::move(goals),
        [model_table, num_actions](StateId s, ActionId a) {
          return (*model_table)[s * num_actions + a];
        },
        [cost_table, num_actions](StateId s, ActionId a) {
          if (cost_table->empty()) return 1.0;
          return (*cost_table)[s * num_actions + a];
        });
  }

  const cmaxpp::Problem& problem() const override { return problem_; }
  StateId start() const override { return start_; }
  StateId true_step(StateId s, ActionId a) const override {
    return truth_[s * num_actions_ + a];
  }
  int coord_dims() const override { return 1; }
  std::vector<int> coords(StateId s) const override { return {s}; }

 private:
  cmaxpp::Problem problem_;
  StateId start_;
  std::vector<StateId> truth_;
  std::int32_t num_actions_;
};

struct RefSearchOut {
  ActionId action = -1;
  double best_priority = 0.0;
  std::vector<std::pair<StateId, double>> updates;  // closed, expansion order
};

/// Reference RTAA* lookahead on the model only: flat node vector, linear-scan
/// open-list selection. Ties break toward lower priority, then larger g,
/// then the earliest (re)insertion.
inline RefSearchOut ref_rtaa_search(StateId root, const cmaxpp::Problem& p,
                                    const std::vector<double>& v, int budget) {
  if (p.is_goal(root)) throw std::invalid_argument("root is a goal");
  struct Node {
    StateId state;
    double g;
    double priority;
    int parent;
    ActionId act;
    long seq;
    bool open;
  };
  std::vector<Node> nodes;
  std::vector<int> where(p.num_states(), -1);
  long seq = 0;
  nodes.push_back({root, 0.0, v[root], -1, -1, seq++, true});
  where[root] = 0;

  auto select = [&]() {
    int best = -1;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
      const Node& n = nodes[i];
      if (!n.open) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      const Node& b = nodes[best];
      if (n.priority < b.priority ||
          (n.priority == b.priority &&
           (n.g > b.g || (n.g == b.g && n.seq < b.seq))))
        best = i;
    }
    return best;
  };

  std::vector<int> closed;
  int best = -1;
  for (int i = 0; i < budget; ++i) {
    const int cur = select();
    if (cur < 0) throw cmaxpp::UnsolvableModelError("reference: exhausted");
    if (p.is_goal(nodes[cur].state)) {
      best = cur;
      break;
    }
    nodes[cur].open = false;
    closed.push_back(cur);
    const StateId s = nodes[cur].state;
    for (ActionId a = 0; a < p.num_actions(); ++a) {
      const StateId succ = p.model_step(s, a);
      if (succ == s) continue;
      const int prev = where[succ];
      if (prev >= 0 && !nodes[prev].open) continue;  // closed
      const double ng = nodes[cur].g + p.cost(s, a);
      if (prev < 0) {
        nodes.push_back({succ, ng, ng + v[succ], cur, a, seq++, true});
        where[succ] = static_cast<int>(nodes.size()) - 1;
      } else if (ng < nodes[prev].g) {
        nodes[prev].g = ng;
        nodes[prev].priority = ng + v[succ];
        nodes[prev].parent = cur;
        nodes[prev].act = a;
        nodes[prev].seq = seq++;
      }
    }
  }
  if (best < 0) {
    best = select();
    if (best < 0) throw cmaxpp::UnsolvableModelError("reference: exhausted");
  }

  RefSearchOut out;
  out.best_priority = nodes[best].priority;
  for (int i : closed) out.updates.emplace_back(nodes[i].state, out.best_priority - nodes[i].g);
  int walk = best;
  while (nodes[walk].parent >= 0) {
    out.action = nodes[walk].act;
    walk = nodes[walk].parent;
  }
  if (out.action < 0)
    throw cmaxpp::UnsolvableModelError("reference: best node is the root");
  return out;
}

/// Reference agent: plans with ref_rtaa_search, applies its value batch to a
/// private table, and returns the chosen action.
class RefRtaaAgent {
 public:
  RefRtaaAgent(const cmaxpp::Env& env, int budget,
               std::vector<double> initial_values)
      : env_(&env), budget_(budget), v_(std::move(initial_values)) {
    for (StateId g : env.problem().goals()) v_[g] = 0.0;
  }

  ActionId act(StateId s) {
    const RefSearchOut r = ref_rtaa_search(s, env_->problem(), v_, budget_);
    for (const auto& [state, value] : r.updates)
      if (!env_->problem().is_goal(state)) v_[state] = value;
    return r.action;
  }

  double value(StateId s) const { return v_[s]; }

 private:
  const cmaxpp::Env* env_;
  int budget_;
  std::vector<double> v_;
};

}  // namespace testsupport
