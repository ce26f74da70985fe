#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cmaxpp/incorrect_set.hpp"
#include "cmaxpp/problem.hpp"

namespace cmaxpp {

using ValueFn = std::function<double(StateId)>;
using QFn = std::function<double(StateId, ActionId)>;

enum class SearchTermination { kGoal, kDummy, kBudget };

struct SearchResult {
  ActionId best_action = -1;
  double best_priority = 0.0;
  /// (state, new V) pairs, one per closed state, in expansion order.
  std::vector<std::pair<StateId, double>> value_updates;
  int expansions_used = 0;
  SearchTermination terminated_on = SearchTermination::kBudget;
};

/// Bounded best-first lookahead from s on the given model. Transitions in X
/// spawn dummy leaves priced by Q instead of model successors; popping a
/// dummy or a goal terminates the search. Closed states get the RTAA*-style
/// update V(s') <- p(best) - g(s'), returned as a batch for the caller to
/// apply. Ties on priority break toward larger g, then insertion order.
///
/// Throws UnsolvableModelError when the open list is exhausted with no goal
/// or dummy in reach, and std::invalid_argument when s is already a goal.
SearchResult search(StateId s, const Problem& problem, const ValueFn& value_of,
                    const QFn& q_of, const IncorrectSetBase& incorrect,
                    int expansion_budget, std::ostream* trace = nullptr);

/// Tabular convenience wrapper.
SearchResult search(StateId s, const Problem& problem, const ValueStore& v,
                    const QStore& q, const IncorrectSetBase& incorrect,
                    int expansion_budget, std::ostream* trace = nullptr);

}  // namespace cmaxpp
