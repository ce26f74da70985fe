#pragma once

#include <vector>

#include "cmaxpp/problem.hpp"

namespace cmaxpp {

/// Exact optimal cost-to-goal for every state under the given step function
/// and the problem's costs, by backward uniform-cost search from the goal
/// set. States that cannot reach a goal get +infinity, never a silent zero.
std::vector<double> dijkstra_optimal_values(const Problem& problem,
                                            const StepFn& dynamics);

/// Convenience overload using the problem's own model dynamics.
std::vector<double> dijkstra_optimal_values(const Problem& problem);

}  // namespace cmaxpp
