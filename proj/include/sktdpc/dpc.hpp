#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sktdpc/dataset.hpp"
#include "sktdpc/distance_cache.hpp"
#include "sktdpc/kdtree.hpp"

namespace sktdpc {

inline constexpr std::size_t kNoPoint = std::numeric_limits<std::size_t>::max();

/// Descending-by-value permutation, ties broken by ascending index. Infinite
/// values sort first.
std::vector<std::size_t> descending_order(std::span<const double> values);

struct DensityResult {
  std::vector<double> rho;
  std::vector<std::size_t> rho_order;
  /// Points whose k neighbours all coincide with them (rho = +inf).
  std::size_t infinite_count = 0;
};

/// rho_i = 1 / (sum of the distances to the k nearest neighbours).
DensityResult local_density(std::span<const NeighborSet> neighbors);

struct SeparationResult {
  std::vector<double> delta;
  /// Nearest point of higher density; kNoPoint for the densest point.
  std::vector<std::size_t> nhd;
  /// Points resolved inside their own neighbour list.
  std::size_t intersection_hits = 0;
  /// Points (densest included) that needed the scan over higher-density points.
  std::size_t fallback_points = 0;
  /// New distance evaluations performed by the scans.
  std::uint64_t new_evaluations = 0;
};

/// Relative separation by sparse search. For the densest point delta is its
/// largest distance to any point. For every other point i, the candidates are
/// the points preceding it in rho_order; if one of its k neighbours is among
/// them the answer is read off the neighbour list, otherwise all candidates
/// are scanned, reusing cached distances and caching (and counting) new ones.
SeparationResult separation(std::span<const std::size_t> rho_order,
                            std::span<const NeighborSet> neighbors, SparseDistanceMatrix& cache,
                            const Dataset& data);

struct DecisionResult {
  std::vector<double> gamma;
  std::vector<std::size_t> gamma_order;
};

/// gamma_i = rho_i * delta_i (an infinite rho gives an infinite gamma).
DecisionResult decision_values(std::span<const double> rho, std::span<const double> delta);

struct MutationPoint {
  std::size_t m_p = 2;
  /// Upper end of the search window, floor(sqrt(n)).
  std::size_t window = 0;
  /// Score per rank i = 2..window-2 (index 0 is rank 2).
  std::vector<double> scores;
  /// n too small for the window: fixed fallback m_p = 2.
  bool small_n = false;
  /// gamma constant (or non-finite range) over the window.
  bool flat = false;
};

/// Locates the mutation point of the sorted decision values from scored
/// second-order differences over ranks 2..floor(sqrt(n)).
MutationPoint mutation_point(std::span<const std::size_t> gamma_order,
                             std::span<const double> gamma);

struct CenterSelection {
  /// Points at gamma ranks 1..m_p.
  std::vector<std::size_t> candidates;
  std::vector<std::size_t> centers;
  double rho_threshold = 0.0;
  double delta_threshold = 0.0;
  /// The filter rejected every candidate and the rank-1 point was kept.
  bool kept_top = false;
};

/// Keeps candidates whose rho and delta both exceed their means over the top
/// floor(sqrt(n)) points by gamma.
CenterSelection select_centers(std::span<const std::size_t> gamma_order,
                               std::span<const double> rho, std::span<const double> delta,
                               std::size_t m_p);

using DistanceFn = std::function<double(std::size_t, std::size_t)>;

struct Assignment {
  std::vector<int> labels;
  /// The densest point was not a center and joined its nearest center.
  bool root_reassigned = false;
};

/// Labels centers 0..c-1 in the given order, then propagates labels along the
/// nearest-higher-density links in rho order.
Assignment assign(std::span<const std::size_t> rho_order, std::span<const std::size_t> nhd,
                  std::span<const std::size_t> centers, const DistanceFn& distance);

struct DpcProfile {
  std::vector<double> rho;
  std::vector<std::size_t> rho_order;
  std::vector<double> delta;
  std::vector<std::size_t> nhd;
  std::vector<double> gamma;
  std::vector<std::size_t> gamma_order;
};

struct PhaseTimings {
  double build_tree = 0.0;
  double knn = 0.0;
  double density = 0.0;
  double separation = 0.0;
  double centers = 0.0;
  double assign = 0.0;
  double total = 0.0;
};

struct Counters {
  /// Distinct pairs evaluated by the k-NN search.
  std::uint64_t knn_evaluations = 0;
  /// Raw per-query computations, a pair reached from both ends counted twice.
  std::uint64_t knn_query_evaluations = 0;
  std::uint64_t separation_evaluations = 0;
  std::uint64_t total_evaluations = 0;
  std::size_t stored_pairs = 0;
  std::uint64_t full_pairs = 0;
  std::size_t intersection_hits = 0;
  std::size_t fallback_points = 0;

  /// total_evaluations / full_pairs (1 when there are no pairs).
  double ratio() const {
    return full_pairs == 0 ? 1.0
                           : static_cast<double>(total_evaluations) /
                                 static_cast<double>(full_pairs);
  }
};

struct ClusteringResult {
  std::vector<std::size_t> centers;
  std::vector<int> labels;
  std::size_t m_p = 0;
  std::vector<std::size_t> candidate_centers;
  DpcProfile profile;
  Counters counters;
  PhaseTimings timings;
  /// Degenerate paths taken (e.g. "small-n", "flat-window", "kept-top").
  std::vector<std::string> flags;

  std::size_t cluster_count() const { return centers.size(); }
};

struct RunOptions {
  unsigned workers = 1;
};

/// Full pipeline: tree, k-NN, density, sparse separation, decision values,
/// mutation point, center filter, assignment.
ClusteringResult run_sktdpc(const Dataset& data, std::size_t k, const RunOptions& options = {});

}  // namespace sktdpc
