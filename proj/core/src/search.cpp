#include "cmaxpp/search.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace cmaxpp {

namespace {

struct Node {
  StateId state = -1;  // meaningless for dummies
  bool is_dummy = false;
  double g = 0.0;
  double priority = 0.0;
  int parent = -1;
  ActionId arriving_action = -1;
  bool closed = false;
};

struct HeapEntry {
  double priority;
  double g;
  std::int64_t seq;
  int node;
};

// Min-heap order: lower priority first, then deeper nodes (larger g),
// then earlier insertion.
struct HeapCompare {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.priority != b.priority) return a.priority > b.priority;
    if (a.g != b.g) return a.g < b.g;
    return a.seq > b.seq;
  }
};

}  // namespace

SearchResult search(StateId start, const Problem& problem,
                    const ValueFn& value_of, const QFn& q_of,
                    const IncorrectSetBase& incorrect, int expansion_budget,
                    std::ostream* trace) {
  if (problem.is_goal(start))
    throw std::invalid_argument("search called on a goal state");
  if (expansion_budget < 1)
    throw std::invalid_argument("expansion budget must be >= 1");

  std::vector<Node> nodes;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> open;
  std::unordered_map<StateId, int> open_index;  // real states only
  std::unordered_set<StateId> closed;
  std::vector<int> closed_order;
  std::int64_t seq = 0;

  auto push = [&](int node) {
    open.push({nodes[node].priority, nodes[node].g, seq++, node});
  };

  nodes.push_back({start, false, 0.0, value_of(start), -1, -1, false});
  open_index[start] = 0;
  push(0);

  // Pops the next live entry: one whose node still matches the recorded
  // priority/g (stale duplicates from g-improvements are skipped), and whose
  // state is not closed.
  auto pop_live = [&]() -> int {
    while (!open.empty()) {
      const HeapEntry e = open.top();
      open.pop();
      const Node& n = nodes[e.node];
      if (n.priority != e.priority || n.g != e.g) continue;
      if (!n.is_dummy && closed.count(n.state) > 0) continue;
      return e.node;
    }
    return -1;
  };

  int best = -1;
  SearchTermination termination = SearchTermination::kBudget;
  int expansions = 0;

  for (int i = 0; i < expansion_budget; ++i) {
    const int cur = pop_live();
    if (cur < 0)
      throw UnsolvableModelError("open list exhausted under the model");
    Node& n = nodes[cur];
    if (n.is_dummy || problem.is_goal(n.state)) {
      best = cur;
      termination = n.is_dummy ? SearchTermination::kDummy
                               : SearchTermination::kGoal;
      break;
    }

    if (trace)
      *trace << "expand state=" << n.state << " g=" << n.g
             << " p=" << n.priority << '\n';

    const StateId s = n.state;
    const double g = n.g;
    for (ActionId a = 0; a < problem.num_actions(); ++a) {
      if (incorrect.contains(s, a)) {
        // The model does not know the true successor; price the leaf by Q.
        nodes.push_back({-1, true, g, g + q_of(s, a), cur, a, false});
        push(static_cast<int>(nodes.size()) - 1);
        continue;
      }
      const StateId succ = problem.model_step(s, a);
      if (succ == s) continue;
      if (closed.count(succ) > 0) continue;
      const double ng = g + problem.cost(s, a);
      auto it = open_index.find(succ);
      if (it != open_index.end()) {
        Node& m = nodes[it->second];
        if (m.g > ng) {
          m.g = ng;
          m.priority = ng + value_of(succ);
          m.parent = cur;
          m.arriving_action = a;
          push(it->second);
        }
      } else {
        nodes.push_back({succ, false, ng, ng + value_of(succ), cur, a, false});
        const int idx = static_cast<int>(nodes.size()) - 1;
        open_index[succ] = idx;
        push(idx);
      }
    }
    closed.insert(s);
    closed_order.push_back(cur);
    ++expansions;
  }

  if (best < 0) {
    best = pop_live();
    if (best < 0)
      throw UnsolvableModelError("open list exhausted under the model");
  }

  SearchResult result;
  result.best_priority = nodes[best].priority;
  result.expansions_used = expansions;
  result.terminated_on = termination;

  result.value_updates.reserve(closed_order.size());
  for (int idx : closed_order) {
    result.value_updates.emplace_back(nodes[idx].state,
                                      result.best_priority - nodes[idx].g);
  }

  // First action on the tree path from the root to the best node.
  int walk = best;
  while (nodes[walk].parent >= 0) {
    if (nodes[nodes[walk].parent].parent < 0)
      result.best_action = nodes[walk].arriving_action;
    walk = nodes[walk].parent;
  }
  if (result.best_action < 0)
    throw UnsolvableModelError("best node has no path from the root");
  return result;
}

SearchResult search(StateId s, const Problem& problem, const ValueStore& v,
                    const QStore& q, const IncorrectSetBase& incorrect,
                    int expansion_budget, std::ostream* trace) {
  return search(
      s, problem, [&v](StateId state) { return v.get(state); },
      [&q](StateId state, ActionId a) { return q.get(state, a); }, incorrect,
      expansion_budget, trace);
}

}  // namespace cmaxpp
