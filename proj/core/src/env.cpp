#include "cmaxpp/env.hpp"

#include <limits>

#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

bool verify_optimistic_model(const Env& env) {
  const Problem& p = env.problem();
  const std::vector<double> model_v = dijkstra_optimal_values(p);
  const std::vector<double> true_v = dijkstra_optimal_values(
      p, [&env](StateId s, ActionId a) { return env.true_step(s, a); });
  for (std::size_t s = 0; s < model_v.size(); ++s) {
    // 1e-9 slack for float accumulation on long paths.
    if (model_v[s] > true_v[s] + 1e-9) return false;
  }
  return true;
}

bool verify_reachability(const Env& env) {
  const std::vector<double> true_v = dijkstra_optimal_values(
      env.problem(),
      [&env](StateId s, ActionId a) { return env.true_step(s, a); });
  for (double v : true_v) {
    if (v == std::numeric_limits<double>::infinity()) return false;
  }
  return true;
}

std::uint64_t model_dynamics_hash(const Problem& p) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  for (StateId s = 0; s < p.num_states(); ++s) {
    for (ActionId a = 0; a < p.num_actions(); ++a) {
      mix(static_cast<std::uint64_t>(p.model_step(s, a)));
    }
  }
  return h;
}

}  // namespace cmaxpp
