#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "cmaxpp/problem.hpp"

namespace cmaxpp {

/// The discovered-incorrect transition set X. Membership only ever grows.
class IncorrectSetBase {
 public:
  virtual ~IncorrectSetBase() = default;
  virtual bool contains(StateId s, ActionId a) const = 0;
};

class EmptyIncorrectSet final : public IncorrectSetBase {
 public:
  bool contains(StateId, ActionId) const override { return false; }
  static const EmptyIncorrectSet& instance();
};

/// Exact (state, action) membership for small state spaces.
class ExactIncorrectSet final : public IncorrectSetBase {
 public:
  void insert(StateId s, ActionId a) { pairs_.insert({s, a}); }
  bool contains(StateId s, ActionId a) const override {
    return pairs_.count({s, a}) > 0;
  }
  std::size_t size() const { return pairs_.size(); }
  /// Sorted snapshot for trace output.
  std::vector<std::pair<StateId, ActionId>> entries() const {
    return {pairs_.begin(), pairs_.end()};
  }

 private:
  std::set<std::pair<StateId, ActionId>> pairs_;
};

enum class SphereMetric { kManhattan, kEuclidean, kChebyshev };

double sphere_metric_distance(SphereMetric m, const std::vector<int>& a,
                              const std::vector<int>& b);

namespace detail {

/// Static KD-tree over integer points carrying per-point radii. Answers
/// "does any stored ball contain q" with bounding-box pruning against the
/// subtree's maximum radius.
class KdTree {
 public:
  struct Entry {
    std::vector<int> point;
    double radius;
  };

  KdTree() = default;
  explicit KdTree(std::vector<Entry> entries, SphereMetric metric);

  bool any_contains(const std::vector<int>& q) const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Node {
    int entry = -1;
    int left = -1;
    int right = -1;
    std::vector<int> bbox_min, bbox_max;
    double max_radius = 0.0;
  };
  int build(std::vector<int>& index, int lo, int hi, int depth);
  bool query(int node, const std::vector<int>& q) const;
  double min_distance_to_box(const Node& n, const std::vector<int>& q) const;

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
  int root_ = -1;
  SphereMetric metric_ = SphereMetric::kManhattan;
};

}  // namespace detail

/// Per-action unions of metric balls over state coordinates, with a KD-tree
/// index per action. A pending buffer of recent insertions is scanned
/// linearly and folded into the tree once it grows past a threshold.
class HypersphereSet final : public IncorrectSetBase {
 public:
  using CoordsFn = std::function<std::vector<int>(StateId)>;

  HypersphereSet(std::int32_t num_actions, CoordsFn coords,
                 SphereMetric metric = SphereMetric::kManhattan);

  /// Adds sphere(center = coords(s), radius) to action a's collection.
  /// Inclusive membership: d(q, center) <= radius.
  void insert(StateId s, ActionId a, double radius);
  bool contains(StateId s, ActionId a) const override;
  /// Linear-scan oracle, used by tests to validate the index.
  bool contains_linear(StateId s, ActionId a) const;

  std::size_t size() const;

  struct Sphere {
    std::vector<int> center;
    double radius;
  };
  /// Snapshot of all spheres for action a, in insertion order.
  const std::vector<Sphere>& spheres(ActionId a) const {
    return actions_[a].spheres;
  }

 private:
  struct PerAction {
    std::vector<Sphere> spheres;
    detail::KdTree tree;
    std::size_t indexed = 0;  // prefix of spheres covered by the tree
  };
  void rebuild(PerAction& pa) const;

  std::vector<PerAction> actions_;
  CoordsFn coords_;
  SphereMetric metric_;
};

}  // namespace cmaxpp
