#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "sktdpc/dataset.hpp"
#include "sktdpc/distance_cache.hpp"

namespace sktdpc {

struct Neighbor {
  std::size_t index;
  double distance;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact k nearest neighbours of `owner`, ascending by (distance, index).
struct NeighborSet {
  std::size_t owner = 0;
  std::vector<Neighbor> neighbors;

  double radius() const { return neighbors.empty() ? 0.0 : neighbors.back().distance; }
  friend bool operator==(const NeighborSet&, const NeighborSet&) = default;
};

/// Orders candidates by distance, then by ascending point index.
inline bool closer(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

/// K-d tree with one point per node. Each node splits on the dimension of
/// largest variance among the points of its region, at the lower median of
/// that dimension; the median point is stored on the node, points with
/// coordinate <= split go left and the rest go right.
///
/// The tree keeps a reference to the dataset, which must outlive it.
struct KnnQueryOptions {
  /// Disable to descend into every subtree (used to check pruning soundness).
  bool prune = true;
};

class KdTree {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t point;
    std::uint32_t split_dim;
    double split_value;
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    bool leaf() const noexcept { return left == kNone && right == kNone; }
  };

  explicit KdTree(const Dataset& data);

  const Dataset& data() const noexcept { return *data_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::uint32_t root() const noexcept { return nodes_.empty() ? kNone : 0; }
  std::size_t depth() const;

  using QueryOptions = KnnQueryOptions;

  /// Exact k-NN of point `target` (itself excluded). Every distance computed
  /// is appended to `evaluated` as (target, other, distance).
  NeighborSet knn(std::size_t target, std::size_t k,
                  std::vector<SparseDistanceMatrix::Entry>& evaluated,
                  QueryOptions options) const;
  NeighborSet knn(std::size_t target, std::size_t k,
                  std::vector<SparseDistanceMatrix::Entry>& evaluated) const {
    return knn(target, k, evaluated, QueryOptions{});
  }

  /// Same query, recording evaluations directly in `cache`.
  NeighborSet knn_query(std::size_t target, std::size_t k, SparseDistanceMatrix& cache,
                        QueryOptions options = {}) const;

  /// Indented text dump, one node per line.
  void dump(std::ostream& out) const;

 private:
  std::uint32_t build(std::vector<std::uint32_t>& ids, std::size_t begin, std::size_t end);

  const Dataset* data_;
  std::vector<Node> nodes_;
};

struct KnnGraph {
  std::vector<NeighborSet> neighbors;
  SparseDistanceMatrix cache;
  /// Distance computations across all queries, counting a pair reached from
  /// both ends twice.
  std::uint64_t query_evaluations = 0;
};

/// k-NN of every point. `workers` > 1 runs queries on that many threads; the
/// result does not depend on the worker count.
KnnGraph knn_all(const KdTree& tree, std::size_t k, unsigned workers = 1);

void check_k(std::size_t k, std::size_t n);

}  // namespace sktdpc
