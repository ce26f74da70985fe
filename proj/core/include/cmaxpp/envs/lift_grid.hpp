#pragma once

#include <vector>

#include "cmaxpp/env.hpp"

namespace cmaxpp {

struct LiftGridConfig {
  int width = 10;
  int height = 10;
  /// Heavy band of heights, inclusive. Upward motion from a band height
  /// fails (stays in place) except in strong columns.
  int band_lo = 4;
  int band_hi = 5;
  /// Columns where lifting through the band works, but drags the carrier
  /// one column to the right: up from (c, h) lands at (c + 1, h + 1).
  std::vector<int> strong_cols = {2, 3};
  int start_col = 0;
  int goal_col = 0;
};

/// 2-D (column, height) world where the model permits lifting everywhere
/// but the true dynamics cap upward motion inside a heavy band. The goal
/// sits above the band, so every goal path must lift through it via a
/// strong column, and every such lift is mispredicted by the model: there
/// is no goal path that avoids incorrect transitions. The model remains
/// optimistic (verified at construction): strong lifts cost one step for
/// zero net goal progress, weak lifts cost one step for none.
class LiftGrid final : public Env {
 public:
  static constexpr ActionId kRight = 0, kLeft = 1, kUp = 2, kDown = 3;

  explicit LiftGrid(LiftGridConfig config);

  const Problem& problem() const override { return problem_; }
  StateId start() const override { return start_; }
  StateId true_step(StateId s, ActionId a) const override;

  int coord_dims() const override { return 2; }
  std::vector<int> coords(StateId s) const override;
  bool optimistic_model() const override { return true; }

  const LiftGridConfig& config() const { return config_; }
  StateId id(int col, int height) const;
  StateId goal_state() const { return goal_; }
  bool strong(int col) const;
  bool in_band(int height) const {
    return height >= config_.band_lo && height <= config_.band_hi;
  }

  /// Whether the goal is still reachable from the start under the true
  /// dynamics with all successful band lifts removed. False by
  /// construction; exposed so tests can assert the structural property.
  bool goal_reachable_without_band_lifts() const;

 private:
  LiftGridConfig config_;
  StateId start_ = -1;
  StateId goal_ = -1;
  Problem problem_;
};

}  // namespace cmaxpp
