#pragma once

#include <cstddef>
#include <vector>

#include "sktdpc/dataset.hpp"
#include "sktdpc/dpc.hpp"
#include "sktdpc/kdtree.hpp"

/// Exact reference implementations. Nothing here uses the tree, the sparse
/// cache or the dpc-core helpers; they exist to be compared against.
namespace sktdpc::baseline {

/// All pairwise Euclidean distances, stored as the strict upper triangle.
class FullDistanceMatrix {
 public:
  FullDistanceMatrix() = default;
  explicit FullDistanceMatrix(const Dataset& d);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return upper_[offset(i) + (j - i - 1)];
  }
  std::size_t pair_count() const noexcept { return upper_.size(); }

 private:
  std::size_t offset(std::size_t i) const { return i * (2 * n_ - i - 1) / 2; }

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

FullDistanceMatrix full_matrix(const Dataset& d);

/// k nearest neighbours of i by exhaustive scan, ties by ascending index.
NeighborSet brute_knn(const FullDistanceMatrix& m, std::size_t i, std::size_t k);

/// Original cut-off density clustering: rho_i counts points closer than dc,
/// the n_centers largest decision values become centers.
ClusteringResult dpc_original(const Dataset& d, double dc, std::size_t n_centers);

/// Cut-off distance such that `percent` of all pairs lie closer than it.
double dc_from_percent(const FullDistanceMatrix& m, double percent);

/// The SKTDPC pipeline evaluated directly on the full matrix: brute-force
/// k-NN density, exhaustive nearest-higher-density search, mutation point,
/// center filter and assignment, all by plain scans.
ClusteringResult sktdpc_reference(const Dataset& d, std::size_t k);
ClusteringResult sktdpc_reference(const FullDistanceMatrix& m, std::size_t k);

}  // namespace sktdpc::baseline
