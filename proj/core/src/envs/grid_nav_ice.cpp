#include "cmaxpp/envs/grid_nav_ice.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

bool is_ice(char c) { return c == '>' || c == '<' || c == '^' || c == 'v'; }

int drift_dx(char c) { return c == '>' ? 1 : c == '<' ? -1 : 0; }
int drift_dy(char c) { return c == '^' ? 1 : c == 'v' ? -1 : 0; }

}  // namespace

struct GridNavIce::Grid {
  int width = 0;
  int height = 0;
  std::vector<char> cells;  // indexed y * width + x
  StateId start = -1;
  StateId goal = -1;

  char at(int x, int y) const { return cells[y * width + x]; }
  bool blocked(int x, int y) const {
    return x < 0 || x >= width || y < 0 || y >= height || at(x, y) == '#';
  }
  StateId nominal(StateId s, ActionId a) const {
    const int x = s % width, y = s / width;
    const int nx = x + kDx[a], ny = y + kDy[a];
    if (blocked(nx, ny)) return s;
    return ny * width + nx;
  }
  StateId truth(StateId s, ActionId a) const {
    const int x = s % width, y = s / width;
    const char c = at(x, y);
    if (!is_ice(c)) return nominal(s, a);
    const int nx = x + drift_dx(c), ny = y + drift_dy(c);
    if (blocked(nx, ny)) return s;
    return ny * width + nx;
  }
};

GridNavIce::GridNavIce(std::shared_ptr<const Grid> grid, bool claim_optimistic)
    : grid_(std::move(grid)),
      start_(grid_->start),
      goal_(grid_->goal),
      optimistic_(claim_optimistic),
      problem_(static_cast<std::int64_t>(grid_->width) * grid_->height, 4,
               {grid_->goal},
               [g = grid_](StateId s, ActionId a) { return g->nominal(s, a); },
               [](StateId, ActionId) { return 1.0; }) {
  const std::vector<double> true_v = dijkstra_optimal_values(
      problem_, [g = grid_](StateId s, ActionId a) { return g->truth(s, a); });
  if (true_v[start_] == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("goal unreachable from start");
  if (optimistic_ && !verify_optimistic_model(*this))
    throw std::invalid_argument("optimistic-model check failed");
}

StateId GridNavIce::true_step(StateId s, ActionId a) const {
  return grid_->truth(s, a);
}

std::vector<int> GridNavIce::coords(StateId s) const {
  return {s % grid_->width, s / grid_->width};
}

int GridNavIce::width() const { return grid_->width; }
int GridNavIce::height() const { return grid_->height; }

StateId GridNavIce::id(int x, int y) const { return y * grid_->width + x; }

char GridNavIce::cell(int x, int y) const { return grid_->at(x, y); }

GridNavIce GridNavIce::from_ascii(const std::vector<std::string>& rows,
                                  bool claim_optimistic) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("empty map");
  auto grid = std::make_shared<Grid>();
  grid->height = static_cast<int>(rows.size());
  grid->width = static_cast<int>(rows.front().size());
  grid->cells.resize(static_cast<std::size_t>(grid->width) * grid->height);
  for (int y = 0; y < grid->height; ++y) {
    // Row 0 of the input is the top of the map.
    const std::string& row = rows[grid->height - 1 - y];
    if (static_cast<int>(row.size()) != grid->width)
      throw std::invalid_argument("ragged map rows");
    for (int x = 0; x < grid->width; ++x) {
      char c = row[x];
      if (c == 'S') {
        if (grid->start >= 0) throw std::invalid_argument("multiple starts");
        grid->start = y * grid->width + x;
        c = '.';
      } else if (c == 'G') {
        if (grid->goal >= 0) throw std::invalid_argument("multiple goals");
        grid->goal = y * grid->width + x;
        c = '.';
      } else if (c != '.' && c != '#' && !is_ice(c)) {
        throw std::invalid_argument("unknown map character");
      }
      grid->cells[y * grid->width + x] = c;
    }
  }
  if (grid->start < 0 || grid->goal < 0)
    throw std::invalid_argument("map needs exactly one S and one G");
  for (int y = 0; y < grid->height; ++y) {
    for (int x = 0; x < grid->width; ++x) {
      const char c = grid->at(x, y);
      if (!is_ice(c)) continue;
      const int tx = x + drift_dx(c), ty = y + drift_dy(c);
      if (grid->blocked(tx, ty))
        throw std::invalid_argument("icy drift into a blocked cell");
      if (is_ice(grid->at(tx, ty)))
        throw std::invalid_argument("icy drift onto another icy cell");
    }
  }
  return GridNavIce(std::move(grid), claim_optimistic);
}

GridNavIce GridNavIce::random_obstacles(int width, int height, double density,
                                        std::uint64_t seed) {
  if (width < 3 || height < 3) throw std::invalid_argument("grid too small");
  if (density < 0.0 || density > 0.5)
    throw std::invalid_argument("density out of range");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b9);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::string> rows(height, std::string(width, '.'));
    for (auto& row : rows)
      for (char& c : row)
        if (coin(rng) < density) c = '#';
    std::uniform_int_distribution<int> px(0, width - 1), py(0, height - 1);
    const int sx = px(rng), sy = py(rng);
    const int gx = px(rng), gy = py(rng);
    if (sx == gx && sy == gy) continue;
    rows[sy][sx] = 'S';
    rows[gy][gx] = 'G';
    try {
      return from_ascii(rows, true);
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::invalid_argument("could not sample a reachable instance");
}

GridNavIce GridNavIce::bottleneck(int width, int height, std::uint64_t seed) {
  if (width < 7 || height < 5) throw std::invalid_argument("grid too small");
  const int wall_x = width / 2;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b9);
    std::vector<std::string> rows(height, std::string(width, '.'));
    auto set = [&rows, height](int x, int y, char c) {
      rows[height - 1 - y][x] = c;
    };
    auto get = [&rows, height](int x, int y) {
      return rows[height - 1 - y][x];
    };
    for (int y = 0; y < height; ++y) set(wall_x, y, '#');
    std::uniform_int_distribution<int> wy(1, height - 2);
    const int pass_y = wy(rng);
    set(wall_x, pass_y, '>');

    // Decoy icy cells on the start side, drifting into free space.
    std::uniform_int_distribution<int> dx(1, wall_x - 2), dy(1, height - 2);
    const char drifts[4] = {'>', '<', '^', 'v'};
    std::uniform_int_distribution<int> dd(0, 3);
    for (int k = 0; k < 3; ++k) {
      const int x = dx(rng), y = dy(rng);
      const char d = drifts[dd(rng)];
      const int tx = x + drift_dx(d), ty = y + drift_dy(d);
      if (get(x, y) != '.' || tx < 0 || tx >= wall_x) continue;
      if (get(tx, ty) != '.') continue;
      if (x == wall_x - 1 && y == pass_y) continue;
      set(x, y, d);
    }

    std::uniform_int_distribution<int> sx(1, wall_x - 2),
        gx(wall_x + 2, width - 2);
    const int start_x = sx(rng), start_y = wy(rng);
    const int goal_x = gx(rng), goal_y = wy(rng);
    if (get(start_x, start_y) != '.' || get(goal_x, goal_y) != '.') continue;
    set(start_x, start_y, 'S');
    set(goal_x, goal_y, 'G');
    try {
      return from_ascii(rows, true);
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::invalid_argument("could not sample a bottleneck instance");
}

}  // namespace cmaxpp
