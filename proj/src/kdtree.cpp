#include "sktdpc/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace sktdpc {

std::vector<SparseDistanceMatrix::Entry> SparseDistanceMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(map_.size());
  for (const auto& [k, d] : map_)
    out.push_back({static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffu), d});
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  return out;
}

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || n < 2 || k > n - 1)
    throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, n-1] for n = " +
                                std::to_string(n));
}

KdTree::KdTree(const Dataset& data) : data_(&data) {
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("KdTree: empty dataset");
  if (n >= kNone) throw std::invalid_argument("KdTree: too many points");
  nodes_.reserve(n);
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  build(ids, 0, n);
}

std::uint32_t KdTree::build(std::vector<std::uint32_t>& ids, std::size_t begin, std::size_t end) {
  struct Task {
    std::size_t begin, end;
    std::uint32_t parent;
    bool left;
  };
  const Dataset& d = *data_;
  const std::size_t dim = d.dim();
  std::vector<Task> stack{{begin, end, kNone, false}};
  std::vector<double> mean(dim), var(dim);

  while (!stack.empty()) {
    const Task t = stack.back();
    stack.pop_back();
    const std::size_t count = t.end - t.begin;

    std::uint32_t split_dim = 0;
    if (count > 1) {
      std::fill(mean.begin(), mean.end(), 0.0);
      std::fill(var.begin(), var.end(), 0.0);
      for (std::size_t p = t.begin; p < t.end; ++p)
        for (std::size_t h = 0; h < dim; ++h) mean[h] += d.at(ids[p], h);
      for (double& m : mean) m /= static_cast<double>(count);
      for (std::size_t p = t.begin; p < t.end; ++p)
        for (std::size_t h = 0; h < dim; ++h) {
          const double diff = d.at(ids[p], h) - mean[h];
          var[h] += diff * diff;
        }
      for (std::size_t h = 1; h < dim; ++h)
        if (var[h] > var[split_dim]) split_dim = static_cast<std::uint32_t>(h);
    }

    const auto first = ids.begin() + static_cast<std::ptrdiff_t>(t.begin);
    const auto last = ids.begin() + static_cast<std::ptrdiff_t>(t.end);
    std::sort(first, last, [&](std::uint32_t a, std::uint32_t b) {
      const double va = d.at(a, split_dim);
      const double vb = d.at(b, split_dim);
      return va < vb || (va == vb && a < b);
    });
    // Lower median: rank ceil(count / 2), 1-based.
    const auto median = first + static_cast<std::ptrdiff_t>((count + 1) / 2 - 1);
    const double split_value = d.at(*median, split_dim);
    const auto greater = std::upper_bound(
        median, last, split_value,
        [&](double v, std::uint32_t id) { return v < d.at(id, split_dim); });
    std::rotate(median, median + 1, greater);

    const auto self = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{*(greater - 1), split_dim, split_value});
    if (t.parent != kNone) (t.left ? nodes_[t.parent].left : nodes_[t.parent].right) = self;

    const std::size_t left_end = static_cast<std::size_t>(greater - ids.begin()) - 1;
    const std::size_t right_begin = left_end + 1;
    if (right_begin < t.end) stack.push_back({right_begin, t.end, self, false});
    if (t.begin < left_end) stack.push_back({t.begin, left_end, self, true});
  }
  return 0;
}

std::size_t KdTree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0u, 1}};
  while (!stack.empty()) {
    const auto [node, level] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, level);
    if (nodes_[node].left != kNone) stack.emplace_back(nodes_[node].left, level + 1);
    if (nodes_[node].right != kNone) stack.emplace_back(nodes_[node].right, level + 1);
  }
  return deepest;
}

NeighborSet KdTree::knn(std::size_t target, std::size_t k,
                        std::vector<SparseDistanceMatrix::Entry>& evaluated,
                        QueryOptions options) const {
  const Dataset& d = *data_;
  check_k(k, d.size());
  if (target >= d.size()) throw std::out_of_range("knn: target out of range");

  const auto query = d.point(target);
  // Max-heap on `closer`: the front is the current k-th best.
  std::vector<Neighbor> best;
  best.reserve(k + 1);

  auto offer = [&](std::uint32_t p) {
    if (p == target) return;
    const double dist = euclidean(query, d.point(p));
    evaluated.push_back({static_cast<std::uint32_t>(target), p, dist});
    const Neighbor cand{p, dist};
    if (best.size() < k) {
      best.push_back(cand);
      std::push_heap(best.begin(), best.end(), closer);
    } else if (closer(cand, best.front())) {
      std::pop_heap(best.begin(), best.end(), closer);
      best.back() = cand;
      std::push_heap(best.begin(), best.end(), closer);
    }
  };

  // Descend towards the target first, evaluate the node on the way back up,
  // then visit the far side unless the splitting plane lies strictly beyond
  // the k-th best distance.
  struct Frame {
    std::uint32_t node;
    bool descended;
  };
  std::vector<Frame> stack{{0u, false}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& node = nodes_[f.node];
    const bool goes_left = query[node.split_dim] <= node.split_value;
    const std::uint32_t near = goes_left ? node.left : node.right;
    const std::uint32_t far = goes_left ? node.right : node.left;
    if (!f.descended) {
      f.descended = true;
      if (near != kNone) stack.push_back({near, false});
      continue;
    }
    stack.pop_back();
    offer(node.point);
    if (far == kNone) continue;
    const double plane = std::abs(query[node.split_dim] - node.split_value);
    if (!options.prune || best.size() < k || plane <= best.front().distance)
      stack.push_back({far, false});
  }

  std::sort_heap(best.begin(), best.end(), closer);
  return NeighborSet{target, std::move(best)};
}

NeighborSet KdTree::knn_query(std::size_t target, std::size_t k, SparseDistanceMatrix& cache,
                              QueryOptions options) const {
  std::vector<SparseDistanceMatrix::Entry> evaluated;
  NeighborSet out = knn(target, k, evaluated, options);
  cache.count_evaluations(cache.merge(evaluated));
  return out;
}

void KdTree::dump(std::ostream& out) const {
  if (nodes_.empty()) return;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0u, 0}};
  while (!stack.empty()) {
    const auto [id, level] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    out << std::string(2 * level, ' ') << "point " << node.point;
    if (node.leaf())
      out << " leaf\n";
    else
      out << " dim " << node.split_dim << " split " << node.split_value << '\n';
    if (node.right != kNone) stack.emplace_back(node.right, level + 1);
    if (node.left != kNone) stack.emplace_back(node.left, level + 1);
  }
}

KnnGraph knn_all(const KdTree& tree, std::size_t k, unsigned workers) {
  const std::size_t n = tree.data().size();
  check_k(k, n);
  KnnGraph graph{std::vector<NeighborSet>(n), SparseDistanceMatrix(n), 0};
  std::vector<std::vector<SparseDistanceMatrix::Entry>> evaluated(n);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) graph.neighbors[i] = tree.knn(i, k, evaluated[i]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
  }

  std::uint64_t added = 0;
  for (const auto& e : evaluated) {
    added += graph.cache.merge(e);
    graph.query_evaluations += e.size();
  }
  graph.cache.count_evaluations(added);
  return graph;
}

}  // namespace sktdpc
