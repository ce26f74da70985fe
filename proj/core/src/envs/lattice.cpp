#include "cmaxpp/envs/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kStep = 0.02;      // integration arc-length step
constexpr double kAngleTol = 0.05;  // radians, endpoint heading snap

int wrap(int theta, int headings) {
  return ((theta % headings) + headings) % headings;
}

}  // namespace

std::vector<MotionPrimitive> generate_motion_primitives(
    const PrimitiveParams& params) {
  if (params.curvatures.empty() || params.speeds.empty())
    throw std::invalid_argument("empty action discretization");
  if (params.snap_tol <= 0.0)
    throw std::invalid_argument("snap tolerance must be > 0");
  if (params.headings < 4)
    throw std::invalid_argument("need at least 4 headings");

  const double sector = 2.0 * kPi / params.headings;
  std::vector<MotionPrimitive> table;
  for (int h = 0; h < params.headings; ++h) {
    std::vector<MotionPrimitive> found;
    for (double curvature : params.curvatures) {
      for (double speed : params.speeds) {
        if (speed <= 0.0) throw std::invalid_argument("speed must be > 0");
        double x = 0.0, y = 0.0, theta = h * sector;
        std::vector<std::array<double, 2>> path;
        const int max_steps =
            static_cast<int>(params.max_length * speed / kStep);
        for (int i = 1; i <= max_steps; ++i) {
          x += std::cos(theta) * kStep;
          y += std::sin(theta) * kStep;
          theta += curvature * kStep;
          path.push_back({x, y});
          const double length = i * kStep;
          if (length < 0.9) continue;
          if (curvature == 0.0 && length > params.max_straight_length + 1e-9)
            break;
          const int dx = static_cast<int>(std::lround(x));
          const int dy = static_cast<int>(std::lround(y));
          if (std::abs(x - dx) > params.snap_tol ||
              std::abs(y - dy) > params.snap_tol)
            continue;
          const double sectors = theta / sector;
          const int theta_idx = static_cast<int>(std::lround(sectors));
          if (std::abs(theta - theta_idx * sector) > kAngleTol) continue;
          const int dtheta = theta_idx - h;
          if (dx == 0 && dy == 0 && dtheta == 0) continue;

          const bool dup = std::any_of(
              found.begin(), found.end(), [&](const MotionPrimitive& p) {
                return p.dx == dx && p.dy == dy && p.dtheta == dtheta;
              });
          if (dup) continue;

          MotionPrimitive prim;
          prim.heading = h;
          prim.dx = dx;
          prim.dy = dy;
          prim.dtheta = dtheta;
          prim.duration = i;
          for (const auto& pt : path) {
            const int cx = static_cast<int>(std::lround(pt[0]));
            const int cy = static_cast<int>(std::lround(pt[1]));
            if (cx == 0 && cy == 0) continue;
            if (!prim.sweep.empty() && prim.sweep.back()[0] == cx &&
                prim.sweep.back()[1] == cy)
              continue;
            prim.sweep.push_back({cx, cy});
          }
          if (prim.sweep.empty() || prim.sweep.back()[0] != dx ||
              prim.sweep.back()[1] != dy)
            prim.sweep.push_back({dx, dy});
          found.push_back(std::move(prim));
        }
      }
    }
    if (found.empty())
      throw std::invalid_argument("no primitive survived filtering");
    std::sort(found.begin(), found.end(),
              [](const MotionPrimitive& a, const MotionPrimitive& b) {
                if (a.dtheta != b.dtheta) return a.dtheta < b.dtheta;
                if (a.duration != b.duration) return a.duration < b.duration;
                if (a.dx != b.dx) return a.dx < b.dx;
                return a.dy < b.dy;
              });
    table.insert(table.end(), found.begin(), found.end());
  }
  return table;
}

std::string primitive_table_to_text(const std::vector<MotionPrimitive>& table) {
  std::ostringstream out;
  out << "primitives v1 " << table.size() << "\n";
  for (const auto& p : table) {
    out << p.heading << ' ' << p.dx << ' ' << p.dy << ' ' << p.dtheta << ' '
        << p.duration << ' ' << p.sweep.size();
    for (const auto& c : p.sweep) out << ' ' << c[0] << ' ' << c[1];
    out << '\n';
  }
  return out.str();
}

std::vector<MotionPrimitive> primitive_table_from_text(
    const std::string& text) {
  std::istringstream in(text);
  std::string word, version;
  std::size_t count = 0;
  in >> word >> version >> count;
  if (word != "primitives" || version != "v1")
    throw std::invalid_argument("unrecognized primitive table header");
  std::vector<MotionPrimitive> table(count);
  for (auto& p : table) {
    std::size_t cells = 0;
    in >> p.heading >> p.dx >> p.dy >> p.dtheta >> p.duration >> cells;
    p.sweep.resize(cells);
    for (auto& c : p.sweep) in >> c[0] >> c[1];
    if (!in) throw std::invalid_argument("truncated primitive table");
  }
  return table;
}

std::uint64_t primitive_params_hash(const PrimitiveParams& params) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  auto mixd = [&mix](double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };
  for (double c : params.curvatures) mixd(c);
  mix(0);
  for (double s : params.speeds) mixd(s);
  mix(1);
  mixd(params.max_length);
  mixd(params.max_straight_length);
  mixd(params.snap_tol);
  mix(static_cast<std::uint64_t>(params.headings));
  return h;
}

struct LatticeWorld::World {
  LatticeConfig config;
  int size = 0;
  int headings = 0;
  int num_actions = 0;
  double cx = 0.0, cy = 0.0;
  double scale = 1.0;
  std::vector<std::vector<MotionPrimitive>> by_heading;
  std::vector<IcyPatch> patches;
  // Goal slab on the right side of the ring: x in [gx_lo, gx_hi],
  // y in [gy_lo, gy_hi], heading in {1, 2, 3}.
  int gx_lo = 0, gx_hi = 0, gy_lo = 0, gy_hi = 0;

  StateId id(int x, int y, int theta) const {
    return (y * size + x) * headings + theta;
  }
  void decode(StateId s, int& x, int& y, int& theta) const {
    theta = s % headings;
    const int cell = s / headings;
    x = cell % size;
    y = cell / size;
  }
  bool on_track(int x, int y) const {
    const double r = std::hypot(x - cx, y - cy);
    return r >= config.ring_inner && r <= config.ring_outer;
  }
  double cell_cost(int x, int y) const {
    if (x < 0 || x >= size || y < 0 || y >= size) return config.off_track_cost;
    return on_track(x, y) ? config.track_cost : config.off_track_cost;
  }
  const MotionPrimitive* prim(int theta, ActionId a) const {
    const auto& list = by_heading[theta];
    if (a >= static_cast<ActionId>(list.size())) return nullptr;
    return &list[a];
  }
  int clamp(int v) const { return std::max(0, std::min(size - 1, v)); }

  StateId model(StateId s, ActionId a) const {
    int x, y, theta;
    decode(s, x, y, theta);
    const MotionPrimitive* p = prim(theta, a);
    if (!p) return s;
    return id(clamp(x + p->dx), clamp(y + p->dy),
              wrap(theta + p->dtheta, headings));
  }
  double cost(StateId s, ActionId a) const {
    int x, y, theta;
    decode(s, x, y, theta);
    const MotionPrimitive* p = prim(theta, a);
    double raw = 0.0;
    if (!p) {
      raw = cell_cost(x, y);
    } else {
      for (const auto& c : p->sweep) raw += cell_cost(x + c[0], y + c[1]);
    }
    return raw / scale;
  }
  StateId truth(StateId s, ActionId a) const {
    int x, y, theta;
    decode(s, x, y, theta);
    const MotionPrimitive* p = prim(theta, a);
    if (!p) return s;
    const IcyPatch* hit = nullptr;
    for (const auto& patch : patches) {
      for (const auto& c : p->sweep) {
        if (std::hypot(x + c[0] - patch.cx, y + c[1] - patch.cy) <=
            patch.radius) {
          hit = &patch;
          break;
        }
      }
      if (hit) break;
    }
    int ex = clamp(x + p->dx), ey = clamp(y + p->dy);
    if (hit) {
      const int px = static_cast<int>(std::lround(hit->cx));
      const int py = static_cast<int>(std::lround(hit->cy));
      ex = clamp(ex + std::clamp(px - ex, -hit->pull, hit->pull));
      ey = clamp(ey + std::clamp(py - ey, -hit->pull, hit->pull));
    }
    return id(ex, ey, wrap(theta + p->dtheta, headings));
  }
  bool is_goal(StateId s) const {
    int x, y, theta;
    decode(s, x, y, theta);
    return x >= gx_lo && x <= gx_hi && y >= gy_lo && y <= gy_hi &&
           theta >= 1 && theta <= 3;
  }
};

LatticeWorld::LatticeWorld(LatticeConfig config)
    : LatticeWorld(std::move(config), {}) {}

LatticeWorld::LatticeWorld(LatticeConfig config,
                           std::vector<MotionPrimitive> table) {
  if (config.size < 16) throw std::invalid_argument("lattice too small");
  if (config.ring_inner <= 0.0 || config.ring_outer <= config.ring_inner)
    throw std::invalid_argument("bad ring radii");
  if (config.ring_outer >= config.size / 2.0 - 1.0)
    throw std::invalid_argument("ring does not fit the grid");
  if (config.track_cost <= 0.0 || config.off_track_cost < config.track_cost)
    throw std::invalid_argument("bad cost map");

  auto world = std::make_shared<World>();
  world->config = config;
  world->size = config.size;
  world->headings = config.primitives.headings;
  world->cx = (config.size - 1) / 2.0;
  world->cy = (config.size - 1) / 2.0;

  if (table.empty()) table = generate_motion_primitives(config.primitives);
  world->by_heading.resize(world->headings);
  int max_dy = 1;
  std::size_t max_sweep = 1;
  for (auto& p : table) {
    if (p.heading < 0 || p.heading >= world->headings)
      throw std::invalid_argument("primitive heading out of range");
    max_dy = std::max(max_dy, std::abs(p.dy));
    max_sweep = std::max(max_sweep, p.sweep.size());
    world->by_heading[p.heading].push_back(std::move(p));
  }
  for (const auto& list : world->by_heading) {
    if (list.empty())
      throw std::invalid_argument("a heading has no primitives");
    world->num_actions = std::max(world->num_actions,
                                  static_cast<int>(list.size()));
  }
  world->scale = max_sweep * config.off_track_cost;

  const double r_mid = (config.ring_inner + config.ring_outer) / 2.0;
  world->gx_lo = static_cast<int>(std::ceil(world->cx + config.ring_inner));
  world->gx_hi = static_cast<int>(std::floor(world->cx + config.ring_outer));
  const int y_c = static_cast<int>(world->cy);
  // Slab as tall as the largest primitive dy, so no primitive from below
  // can land above it without landing in it.
  world->gy_lo = y_c - max_dy / 2;
  world->gy_hi = world->gy_lo + max_dy - 1;

  if (world->patches.empty()) world->patches = config.patches;
  if (world->patches.empty() && config.num_random_patches > 0) {
    std::mt19937_64 rng(config.seed);
    // Keep patches off the start/goal sector around angle 0.
    std::uniform_real_distribution<double> ang(0.15 * 2.0 * kPi,
                                               0.85 * 2.0 * kPi);
    const double min_sep = 0.12 * 2.0 * kPi;
    int guard = 0;
    while (static_cast<int>(world->patches.size()) <
               config.num_random_patches &&
           guard++ < 10000) {
      const double a = ang(rng);
      bool ok = true;
      for (const auto& p : world->patches) {
        const double pa = std::atan2(p.cy - world->cy, p.cx - world->cx);
        double diff = std::abs(std::remainder(a - pa, 2.0 * kPi));
        if (diff < min_sep) ok = false;
      }
      if (!ok) continue;
      world->patches.push_back({world->cx + r_mid * std::cos(a),
                                world->cy + r_mid * std::sin(a),
                                config.patch_radius, config.patch_pull});
    }
    if (static_cast<int>(world->patches.size()) < config.num_random_patches)
      throw std::invalid_argument("could not place icy patches");
  }

  const int start_x = static_cast<int>(std::lround(world->cx + r_mid));
  const int start_y = world->gy_hi + 2;
  start_ = world->id(start_x, start_y, 2);

  std::vector<StateId> goals;
  for (int x = world->gx_lo; x <= world->gx_hi; ++x)
    for (int y = world->gy_lo; y <= world->gy_hi; ++y)
      for (int theta = 1; theta <= 3; ++theta)
        goals.push_back(world->id(x, y, theta));

  world_ = world;
  problem_ = Problem(
      static_cast<std::int64_t>(world->size) * world->size * world->headings,
      world->num_actions, std::move(goals),
      [world](StateId s, ActionId a) { return world->model(s, a); },
      [world](StateId s, ActionId a) { return world->cost(s, a); });

  if (world->is_goal(start_))
    throw std::invalid_argument("start lies in the goal slab");
  const auto model_v = dijkstra_optimal_values(problem_);
  if (model_v[start_] == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("goal unreachable under the model");
  const auto true_v = dijkstra_optimal_values(
      problem_, [world](StateId s, ActionId a) { return world->truth(s, a); });
  if (true_v[start_] == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("goal unreachable under true dynamics");
}

StateId LatticeWorld::true_step(StateId s, ActionId a) const {
  return world_->truth(s, a);
}

std::vector<int> LatticeWorld::coords(StateId s) const {
  int x, y, theta;
  world_->decode(s, x, y, theta);
  return {x, y, theta};
}

double LatticeWorld::metric(StateId a, StateId b) const {
  int ax, ay, at, bx, by, bt;
  world_->decode(a, ax, ay, at);
  world_->decode(b, bx, by, bt);
  const int dt = std::abs(at - bt);
  return std::abs(ax - bx) + std::abs(ay - by) +
         std::min(dt, world_->headings - dt);
}

StateId LatticeWorld::id(int x, int y, int theta) const {
  return world_->id(x, y, theta);
}

int LatticeWorld::size() const { return world_->size; }
int LatticeWorld::headings() const { return world_->headings; }

bool LatticeWorld::on_track(int x, int y) const {
  return world_->on_track(x, y);
}

double LatticeWorld::cell_cost(int x, int y) const {
  return world_->cell_cost(x, y);
}

double LatticeWorld::cost_scale() const { return world_->scale; }

const std::vector<IcyPatch>& LatticeWorld::patches() const {
  return world_->patches;
}

const MotionPrimitive* LatticeWorld::primitive(int heading, ActionId a) const {
  return world_->prim(heading, a);
}

}  // namespace cmaxpp
