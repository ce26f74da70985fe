#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cmaxpp/env.hpp"

namespace cmaxpp {

/// One lattice action: a discrete pose offset valid from one heading, with
/// the cells swept on the way (endpoint included, origin excluded).
struct MotionPrimitive {
  int heading = 0;
  int dx = 0;
  int dy = 0;
  int dtheta = 0;
  std::vector<std::array<int, 2>> sweep;
  /// Integration steps from generation; primitives rebuilt from the same
  /// parameters reproduce this exactly.
  int duration = 0;
};

struct PrimitiveParams {
  /// Signed curvatures (1 / turning radius); 0 gives straight segments.
  std::vector<double> curvatures = {-1.0 / 7.0, 0.0, 1.0 / 7.0};
  std::vector<double> speeds = {1.0};
  double max_length = 6.0;
  double max_straight_length = 3.0;
  double snap_tol = 0.3;
  int headings = 8;
};

/// Unicycle rollouts per heading and curvature, keeping endpoints that snap
/// to a cell center at a heading multiple. Deterministic: identical params
/// give an identical table. Throws if filtering leaves any heading empty.
std::vector<MotionPrimitive> generate_motion_primitives(
    const PrimitiveParams& params);

std::string primitive_table_to_text(const std::vector<MotionPrimitive>& table);
std::vector<MotionPrimitive> primitive_table_from_text(const std::string& text);
std::uint64_t primitive_params_hash(const PrimitiveParams& params);

struct IcyPatch {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 3.0;
  /// Max per-axis endpoint displacement toward the patch center.
  int pull = 2;
};

struct LatticeConfig {
  int size = 50;
  /// Circular track: cells whose distance from the grid center lies in
  /// [ring_inner, ring_outer].
  double ring_inner = 14.0;
  double ring_outer = 19.5;
  double track_cost = 1.0;
  double off_track_cost = 100.0;
  std::vector<IcyPatch> patches;
  /// When patches is empty, this many patches are placed on the track at
  /// seed-derived angles, away from the start/goal sector.
  int num_random_patches = 0;
  double patch_radius = 3.0;
  int patch_pull = 2;
  std::uint64_t seed = 0;
  PrimitiveParams primitives;
};

/// (x, y, heading) navigation world on a ring track. The model applies the
/// clean primitive table; the true dynamics drag a primitive's endpoint
/// toward an icy patch center whenever the swept path touches the patch.
/// Primitive costs sum the cost map over swept cells, rescaled into (0, 1]
/// by the maximum possible primitive cost. Off-grid sweep cells price as
/// off-track and endpoints clamp to the grid edge.
///
/// A lap runs from just past a goal slab on the right side of the ring,
/// counterclockwise around, back into the slab; the slab is thick enough
/// that no primitive can jump over it, and only upward headings count, so
/// doubling back does not finish a lap.
class LatticeWorld final : public Env {
 public:
  explicit LatticeWorld(LatticeConfig config);
  LatticeWorld(LatticeConfig config, std::vector<MotionPrimitive> table);

  const Problem& problem() const override { return problem_; }
  StateId start() const override { return start_; }
  StateId true_step(StateId s, ActionId a) const override;

  int coord_dims() const override { return 3; }
  std::vector<int> coords(StateId s) const override;
  /// Manhattan in (x, y) plus cyclic heading distance.
  double metric(StateId a, StateId b) const override;

  StateId id(int x, int y, int theta) const;
  int size() const;
  int headings() const;
  bool on_track(int x, int y) const;
  double cell_cost(int x, int y) const;
  double cost_scale() const;
  const std::vector<IcyPatch>& patches() const;
  /// Primitive for (heading of s, action a); nullptr for padded stay
  /// actions on headings with fewer primitives.
  const MotionPrimitive* primitive(int heading, ActionId a) const;

 private:
  struct World;
  std::shared_ptr<const World> world_;
  StateId start_ = -1;
  Problem problem_;
};

}  // namespace cmaxpp
