#include "cmaxpp/incorrect_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cmaxpp {

const EmptyIncorrectSet& EmptyIncorrectSet::instance() {
  static const EmptyIncorrectSet set;
  return set;
}

double sphere_metric_distance(SphereMetric m, const std::vector<int>& a,
                              const std::vector<int>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(static_cast<double>(a[i]) - b[i]);
    switch (m) {
      case SphereMetric::kManhattan:
        acc += d;
        break;
      case SphereMetric::kEuclidean:
        acc += d * d;
        break;
      case SphereMetric::kChebyshev:
        acc = std::max(acc, d);
        break;
    }
  }
  return m == SphereMetric::kEuclidean ? std::sqrt(acc) : acc;
}

namespace detail {

KdTree::KdTree(std::vector<Entry> entries, SphereMetric metric)
    : entries_(std::move(entries)), metric_(metric) {
  if (entries_.empty()) return;
  std::vector<int> index(entries_.size());
  std::iota(index.begin(), index.end(), 0);
  nodes_.reserve(entries_.size());
  root_ = build(index, 0, static_cast<int>(index.size()), 0);
}

int KdTree::build(std::vector<int>& index, int lo, int hi, int depth) {
  if (lo >= hi) return -1;
  const int dims = static_cast<int>(entries_[index[lo]].point.size());
  const int dim = depth % dims;
  const int mid = (lo + hi) / 2;
  std::nth_element(index.begin() + lo, index.begin() + mid,
                   index.begin() + hi, [&](int a, int b) {
                     return entries_[a].point[dim] < entries_[b].point[dim];
                   });
  Node n;
  n.entry = index[mid];
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  const int left = build(index, lo, mid, depth + 1);
  const int right = build(index, mid + 1, hi, depth + 1);

  Node& node = nodes_[self];
  node.left = left;
  node.right = right;
  node.bbox_min = entries_[node.entry].point;
  node.bbox_max = entries_[node.entry].point;
  node.max_radius = entries_[node.entry].radius;
  for (int child : {left, right}) {
    if (child < 0) continue;
    const Node& c = nodes_[child];
    for (std::size_t d = 0; d < node.bbox_min.size(); ++d) {
      node.bbox_min[d] = std::min(node.bbox_min[d], c.bbox_min[d]);
      node.bbox_max[d] = std::max(node.bbox_max[d], c.bbox_max[d]);
    }
    node.max_radius = std::max(node.max_radius, c.max_radius);
  }
  return self;
}

double KdTree::min_distance_to_box(const Node& n,
                                   const std::vector<int>& q) const {
  double acc = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    double gap = 0.0;
    if (q[d] < n.bbox_min[d]) gap = n.bbox_min[d] - q[d];
    if (q[d] > n.bbox_max[d]) gap = q[d] - n.bbox_max[d];
    switch (metric_) {
      case SphereMetric::kManhattan:
        acc += gap;
        break;
      case SphereMetric::kEuclidean:
        acc += gap * gap;
        break;
      case SphereMetric::kChebyshev:
        acc = std::max(acc, gap);
        break;
    }
  }
  return metric_ == SphereMetric::kEuclidean ? std::sqrt(acc) : acc;
}

bool KdTree::any_contains(const std::vector<int>& q) const {
  if (root_ < 0) return false;
  return query(root_, q);
}

bool KdTree::query(int node, const std::vector<int>& q) const {
  const Node& n = nodes_[node];
  if (min_distance_to_box(n, q) > n.max_radius) return false;
  const Entry& e = entries_[n.entry];
  if (sphere_metric_distance(metric_, q, e.point) <= e.radius) return true;
  if (n.left >= 0 && query(n.left, q)) return true;
  if (n.right >= 0 && query(n.right, q)) return true;
  return false;
}

}  // namespace detail

HypersphereSet::HypersphereSet(std::int32_t num_actions, CoordsFn coords,
                               SphereMetric metric)
    : actions_(static_cast<std::size_t>(num_actions)),
      coords_(std::move(coords)),
      metric_(metric) {
  if (num_actions <= 0) throw std::invalid_argument("num_actions must be > 0");
  if (!coords_) throw std::invalid_argument("coords function required");
}

void HypersphereSet::insert(StateId s, ActionId a, double radius) {
  if (radius < 0.0) throw std::invalid_argument("radius must be >= 0");
  actions_[a].spheres.push_back({coords_(s), radius});
}

namespace {
constexpr std::size_t kPendingLimit = 64;
}

void HypersphereSet::rebuild(PerAction& pa) const {
  std::vector<detail::KdTree::Entry> entries;
  entries.reserve(pa.spheres.size());
  for (const Sphere& sp : pa.spheres) entries.push_back({sp.center, sp.radius});
  pa.tree = detail::KdTree(std::move(entries), metric_);
  pa.indexed = pa.spheres.size();
}

bool HypersphereSet::contains(StateId s, ActionId a) const {
  if (a < 0 || a >= static_cast<ActionId>(actions_.size())) return false;
  // Fold the pending tail into the index once it grows past the limit.
  auto& pa = const_cast<PerAction&>(actions_[a]);
  if (pa.spheres.size() - pa.indexed > kPendingLimit) rebuild(pa);

  const std::vector<int> q = coords_(s);
  if (pa.tree.any_contains(q)) return true;
  for (std::size_t i = pa.indexed; i < pa.spheres.size(); ++i) {
    if (sphere_metric_distance(metric_, q, pa.spheres[i].center) <=
        pa.spheres[i].radius)
      return true;
  }
  return false;
}

bool HypersphereSet::contains_linear(StateId s, ActionId a) const {
  if (a < 0 || a >= static_cast<ActionId>(actions_.size())) return false;
  const std::vector<int> q = coords_(s);
  for (const Sphere& sp : actions_[a].spheres) {
    if (sphere_metric_distance(metric_, q, sp.center) <= sp.radius) return true;
  }
  return false;
}

std::size_t HypersphereSet::size() const {
  std::size_t n = 0;
  for (const PerAction& pa : actions_) n += pa.spheres.size();
  return n;
}

}  // namespace cmaxpp
