#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "cmaxpp/problem.hpp"

namespace cmaxpp {

/// Execution environment: the planning model plus hidden true dynamics, a
/// start state, and a coordinate embedding used for metrics, hyperspheres,
/// and feature maps. Immutable after construction.
class Env {
 public:
  virtual ~Env() = default;

  virtual const Problem& problem() const = 0;
  virtual StateId start() const = 0;
  virtual StateId true_step(StateId s, ActionId a) const = 0;

  virtual int coord_dims() const = 0;
  virtual std::vector<int> coords(StateId s) const = 0;

  /// Manhattan distance over the coordinate embedding. With xi = 0 this
  /// matches exact successor comparison, since coords are bijective.
  virtual double metric(StateId a, StateId b) const {
    const std::vector<int> ca = coords(a), cb = coords(b);
    double d = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i)
      d += std::abs(static_cast<double>(ca[i]) - cb[i]);
    return d;
  }

  /// Whether this instance claims the optimistic-model property (model
  /// optimal values pointwise below environment optimal values). Instances
  /// claiming it verify the property at construction.
  virtual bool optimistic_model() const { return false; }
};

/// Pointwise check that model optimal values underestimate true-dynamics
/// optimal values (full Dijkstra on both dynamics).
bool verify_optimistic_model(const Env& env);

/// True iff a goal is reachable from every state under the true dynamics.
bool verify_reachability(const Env& env);

/// FNV-1a hash over model_step outputs for all (s, a); used to assert that
/// agents never mutate the model.
std::uint64_t model_dynamics_hash(const Problem& p);

}  // namespace cmaxpp
