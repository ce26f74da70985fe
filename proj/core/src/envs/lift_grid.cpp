#include "cmaxpp/envs/lift_grid.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

namespace {

constexpr int kDc[4] = {1, -1, 0, 0};
constexpr int kDh[4] = {0, 0, 1, -1};

}  // namespace

LiftGrid::LiftGrid(LiftGridConfig config) : config_(std::move(config)) {
  const auto& c = config_;
  if (c.width < 3 || c.height < 3)
    throw std::invalid_argument("lift grid too small");
  if (c.band_lo < 1 || c.band_hi < c.band_lo || c.band_hi >= c.height - 1)
    throw std::invalid_argument("band must lie strictly between floor and top");
  if (c.start_col < 0 || c.start_col >= c.width || c.goal_col < 0 ||
      c.goal_col >= c.width)
    throw std::invalid_argument("start/goal column out of range");
  for (int col : c.strong_cols)
    if (col < 0 || col >= c.width)
      throw std::invalid_argument("strong column out of range");

  // Lifting through the band drifts right one column per row, so crossing
  // needs an ascending run of strong columns as tall as the band, with room
  // to the right.
  const int band_height = c.band_hi - c.band_lo + 1;
  bool crossable = false;
  for (int c0 = 0; c0 + band_height <= c.width - 1 && !crossable; ++c0) {
    bool run = true;
    for (int k = 0; k < band_height; ++k)
      if (!strong(c0 + k)) run = false;
    crossable = run;
  }
  if (!crossable)
    throw std::invalid_argument(
        "strong columns do not form a crossable run for the band height");

  start_ = id(c.start_col, 0);
  goal_ = id(c.goal_col, c.height - 1);
  const int width = c.width, height = c.height;
  problem_ = Problem(
      static_cast<std::int64_t>(width) * height, 4, {goal_},
      [width, height](StateId s, ActionId a) {
        const int col = s % width, h = s / width;
        const int nc = col + kDc[a], nh = h + kDh[a];
        if (nc < 0 || nc >= width || nh < 0 || nh >= height) return s;
        return nh * width + nc;
      },
      [](StateId, ActionId) { return 1.0; });

  if (!verify_optimistic_model(*this))
    throw std::invalid_argument("optimistic-model check failed");
  if (!verify_reachability(*this))
    throw std::invalid_argument("goal unreachable under true dynamics");
}

bool LiftGrid::strong(int col) const {
  return std::find(config_.strong_cols.begin(), config_.strong_cols.end(),
                   col) != config_.strong_cols.end();
}

StateId LiftGrid::id(int col, int height) const {
  return height * config_.width + col;
}

StateId LiftGrid::true_step(StateId s, ActionId a) const {
  const int col = s % config_.width, h = s / config_.width;
  if (a == kUp && in_band(h)) {
    if (strong(col) && col + 1 < config_.width && h + 1 < config_.height)
      return id(col + 1, h + 1);
    return h > 0 ? id(col, h - 1) : s;  // the lift slips back down
  }
  return problem_.model_step(s, a);
}

std::vector<int> LiftGrid::coords(StateId s) const {
  return {s % config_.width, s / config_.width};
}

bool LiftGrid::goal_reachable_without_band_lifts() const {
  const auto values = dijkstra_optimal_values(
      problem_, [this](StateId s, ActionId a) {
        const int h = s / config_.width;
        if (a == kUp && in_band(h)) return s;  // strip every band lift
        return true_step(s, a);
      });
  return values[start_] != std::numeric_limits<double>::infinity();
}

}  // namespace cmaxpp
