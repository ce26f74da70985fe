#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cmaxpp/env.hpp"

namespace cmaxpp {

/// 4-connected grid navigation with icy cells. The model predicts nominal
/// motion everywhere; the true dynamics replace the outcome on an icy cell
/// with that cell's fixed drift, whatever action was taken. Moves into
/// obstacles or off the grid stay in place, cost still charged.
///
/// Cell legend for ASCII maps (row 0 is the top of the map):
///   '.' free   '#' obstacle   'S' start   'G' goal
///   '>' '<' '^' 'v' icy cell drifting right/left/up/down
class GridNavIce final : public Env {
 public:
  static constexpr ActionId kRight = 0, kUp = 1, kLeft = 2, kDown = 3;

  /// Throws std::invalid_argument on malformed maps, icy cells whose drift
  /// is blocked or lands on another icy cell (absorbing traps), unreachable
  /// goals, or a failed optimistic-model check when one is claimed.
  static GridNavIce from_ascii(const std::vector<std::string>& rows,
                               bool claim_optimistic = true);

  /// Obstacle-only instance (no ice, model exact): random obstacles at the
  /// given density plus random distinct start/goal, resampled until the goal
  /// is reachable.
  static GridNavIce random_obstacles(int width, int height, double density,
                                     std::uint64_t seed);

  /// Wall splitting the grid with a single icy passage cell whose drift
  /// carries the agent through, plus a few decoy icy cells on the start
  /// side. Optimistic-model check verified at construction.
  static GridNavIce bottleneck(int width, int height, std::uint64_t seed);

  const Problem& problem() const override { return problem_; }
  StateId start() const override { return start_; }
  StateId true_step(StateId s, ActionId a) const override;

  int coord_dims() const override { return 2; }
  std::vector<int> coords(StateId s) const override;
  bool optimistic_model() const override { return optimistic_; }

  int width() const;
  int height() const;
  StateId id(int x, int y) const;
  StateId goal_state() const { return goal_; }
  char cell(int x, int y) const;

 private:
  struct Grid;
  GridNavIce(std::shared_ptr<const Grid> grid, bool claim_optimistic);

  std::shared_ptr<const Grid> grid_;
  StateId start_ = -1;
  StateId goal_ = -1;
  bool optimistic_ = false;
  Problem problem_;
};

}  // namespace cmaxpp
