#include <random>

#include <doctest.h>

#include "cmaxpp/incorrect_set.hpp"

using namespace cmaxpp;

namespace {

// States are points on a 2-D grid, id = y * width + x.
HypersphereSet::CoordsFn grid_coords(int width) {
  return [width](StateId s) {
    return std::vector<int>{s % width, s / width};
  };
}

}  // namespace

TEST_CASE("exact set insert and query") {
  ExactIncorrectSet x;
  CHECK_FALSE(x.contains(3, 1));
  x.insert(3, 1);
  CHECK(x.contains(3, 1));
  CHECK_FALSE(x.contains(3, 2));  // per-action separation
  CHECK_FALSE(x.contains(4, 1));
  x.insert(3, 1);  // idempotent
  CHECK(x.size() == 1);
  CHECK(x.entries() ==
        std::vector<std::pair<StateId, ActionId>>{{3, 1}});
}

TEST_CASE("hypersphere membership with manhattan radius 3") {
  const int width = 10;
  HypersphereSet x(2, grid_coords(width), SphereMetric::kManhattan);
  CHECK_FALSE(x.contains(0, 1));  // empty set

  x.insert(0, 1, 3.0);  // center (0, 0), action 1
  CHECK(x.contains(2 * width + 1, 1));        // (1,2): d = 3 <= 3
  CHECK_FALSE(x.contains(2 * width + 2, 1));  // (2,2): d = 4 > 3
  CHECK_FALSE(x.contains(2 * width + 1, 0));  // other action
}

TEST_CASE("exact mode equals hypersphere mode with radius zero") {
  const int width = 8;
  ExactIncorrectSet exact;
  HypersphereSet spheres(3, grid_coords(width), SphereMetric::kManhattan);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<StateId> state(0, width * width - 1);
  std::uniform_int_distribution<ActionId> action(0, 2);
  for (int i = 0; i < 50; ++i) {
    const StateId s = state(rng);
    const ActionId a = action(rng);
    exact.insert(s, a);
    spheres.insert(s, a, 0.0);
  }
  for (StateId s = 0; s < width * width; ++s)
    for (ActionId a = 0; a < 3; ++a)
      CHECK(exact.contains(s, a) == spheres.contains(s, a));
}

TEST_CASE("index answers match the linear-scan oracle") {
  const int width = 40;
  for (SphereMetric metric : {SphereMetric::kManhattan,
                              SphereMetric::kEuclidean,
                              SphereMetric::kChebyshev}) {
    HypersphereSet x(4, grid_coords(width), metric);
    std::mt19937_64 rng(17 + static_cast<int>(metric));
    std::uniform_int_distribution<StateId> state(0, width * width - 1);
    std::uniform_int_distribution<ActionId> action(0, 3);
    std::uniform_real_distribution<double> radius(0.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
      if (i % 3 == 0) x.insert(state(rng), action(rng), radius(rng));
      const StateId q = state(rng);
      const ActionId a = action(rng);
      CHECK(x.contains(q, a) == x.contains_linear(q, a));
    }
  }
}

TEST_CASE("membership only grows") {
  const int width = 12;
  HypersphereSet x(2, grid_coords(width), SphereMetric::kManhattan);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<StateId> state(0, width * width - 1);
  std::vector<std::pair<StateId, ActionId>> members;
  for (int i = 0; i < 30; ++i) {
    for (const auto& [s, a] : members) CHECK(x.contains(s, a));
    const StateId s = state(rng);
    x.insert(s, i % 2, 2.0);
    members.emplace_back(s, i % 2);
  }
}

TEST_CASE("sphere metric distances") {
  const std::vector<int> a = {0, 0}, b = {3, -4};
  CHECK(sphere_metric_distance(SphereMetric::kManhattan, a, b) == 7.0);
  CHECK(sphere_metric_distance(SphereMetric::kEuclidean, a, b) == 5.0);
  CHECK(sphere_metric_distance(SphereMetric::kChebyshev, a, b) == 4.0);
}

TEST_CASE("sphere snapshots keep insertion order") {
  HypersphereSet x(1, grid_coords(5), SphereMetric::kManhattan);
  x.insert(0, 0, 1.0);
  x.insert(7, 0, 2.0);
  const auto& spheres = x.spheres(0);
  REQUIRE(spheres.size() == 2);
  CHECK(spheres[0].center == std::vector<int>{0, 0});
  CHECK(spheres[0].radius == 1.0);
  CHECK(spheres[1].center == std::vector<int>{2, 1});
  CHECK(spheres[1].radius == 2.0);
}
