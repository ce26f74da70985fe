#include "cmaxpp/oracle.hpp"

#include <limits>
#include <queue>

namespace cmaxpp {

std::vector<double> dijkstra_optimal_values(const Problem& problem,
                                            const StepFn& dynamics) {
  const std::int64_t n = problem.num_states();
  const std::int32_t na = problem.num_actions();

  // Reverse adjacency: for each successor, the (predecessor, cost) edges.
  struct Edge {
    StateId from;
    double cost;
  };
  std::vector<std::vector<Edge>> reverse(static_cast<std::size_t>(n));
  for (StateId s = 0; s < n; ++s) {
    if (problem.is_goal(s)) continue;  // goals are absorbing
    for (ActionId a = 0; a < na; ++a) {
      const StateId succ = dynamics(s, a);
      reverse[succ].push_back({s, problem.cost(s, a)});
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  using Item = std::pair<double, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  for (StateId g : problem.goals()) {
    dist[g] = 0.0;
    open.push({0.0, g});
  }
  while (!open.empty()) {
    const auto [d, s] = open.top();
    open.pop();
    if (d > dist[s]) continue;
    for (const Edge& e : reverse[s]) {
      const double nd = d + e.cost;
      if (nd < dist[e.from]) {
        dist[e.from] = nd;
        open.push({nd, e.from});
      }
    }
  }
  return dist;
}

std::vector<double> dijkstra_optimal_values(const Problem& problem) {
  return dijkstra_optimal_values(
      problem, [&problem](StateId s, ActionId a) {
        return problem.model_step(s, a);
      });
}

}  // namespace cmaxpp
