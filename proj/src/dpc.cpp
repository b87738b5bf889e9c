#include "sktdpc/dpc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sktdpc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  });
  return order;
}

DensityResult local_density(std::span<const NeighborSet> neighbors) {
  DensityResult out;
  out.rho.resize(neighbors.size());
  std::size_t k = neighbors.empty() ? 0 : neighbors.front().neighbors.size();
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const NeighborSet& set = neighbors[i];
    if (set.neighbors.size() != k || k == 0)
      throw std::invalid_argument("local_density: neighbour sets must share one k >= 1");
    double sum = 0.0;
    for (const Neighbor& nb : set.neighbors) {
      if (nb.index == set.owner) throw std::invalid_argument("local_density: point is its own neighbour");
      sum += nb.distance;
    }
    if (sum == 0.0) {
      out.rho[i] = std::numeric_limits<double>::infinity();
      ++out.infinite_count;
    } else {
      out.rho[i] = 1.0 / sum;
    }
  }
  out.rho_order = descending_order(out.rho);
  return out;
}

SeparationResult separation(std::span<const std::size_t> rho_order,
                            std::span<const NeighborSet> neighbors, SparseDistanceMatrix& cache,
                            const Dataset& data) {
  const std::size_t n = rho_order.size();
  SeparationResult out;
  out.delta.assign(n, 0.0);
  out.nhd.assign(n, kNoPoint);
  if (n == 0) return out;

  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[rho_order[r]] = r;

  auto distance = [&](std::size_t i, std::size_t j) {
    if (auto hit = cache.find(i, j)) return *hit;
    const double d = euclidean(data.point(i), data.point(j));
    cache.insert(i, j, d);
    cache.count_evaluations(1);
    ++out.new_evaluations;
    return d;
  };

  const std::size_t densest = rho_order[0];
  ++out.fallback_points;
  for (std::size_t j = 0; j < n; ++j)
    if (j != densest) out.delta[densest] = std::max(out.delta[densest], distance(densest, j));

  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t i = rho_order[r];
    // The neighbour list is sorted by (distance, index), so the first member
    // of higher density is the minimiser over the whole higher-density set.
    const auto& list = neighbors[i].neighbors;
    const auto hit = std::find_if(list.begin(), list.end(),
                                  [&](const Neighbor& nb) { return rank[nb.index] < r; });
    if (hit != list.end()) {
      out.delta[i] = hit->distance;
      out.nhd[i] = hit->index;
      ++out.intersection_hits;
      continue;
    }
    ++out.fallback_points;
    Neighbor best{kNoPoint, std::numeric_limits<double>::infinity()};
    for (std::size_t q = 0; q < r; ++q) {
      const std::size_t j = rho_order[q];
      const Neighbor cand{j, distance(i, j)};
      if (closer(cand, best)) best = cand;
    }
    out.delta[i] = best.distance;
    out.nhd[i] = best.index;
  }
  return out;
}

DecisionResult decision_values(std::span<const double> rho, std::span<const double> delta) {
  if (rho.size() != delta.size()) throw std::invalid_argument("decision_values: length mismatch");
  DecisionResult out;
  out.gamma.resize(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    out.gamma[i] = std::isinf(rho[i]) ? rho[i] : rho[i] * delta[i];
  out.gamma_order = descending_order(out.gamma);
  return out;
}

MutationPoint mutation_point(std::span<const std::size_t> gamma_order,
                             std::span<const double> gamma) {
  MutationPoint out;
  const std::size_t n = gamma_order.size();
  out.window = isqrt(n);
  const std::size_t w = out.window;
  if (w < 4) {
    out.small_n = true;
    out.m_p = 2;
    return out;
  }
  // g[r] is the decision value at 1-based rank r.
  std::vector<double> g(w + 1);
  for (std::size_t r = 1; r <= w; ++r) g[r] = gamma[gamma_order[r - 1]];

  const auto [lo, hi] = std::minmax_element(g.begin() + 2, g.end());
  const double range = *hi - *lo;
  if (!(range > 0.0) || !std::isfinite(range)) {
    out.flat = true;
    out.m_p = w - 2;
    return out;
  }

  std::vector<double> mu(w, 0.0);
  for (std::size_t i = 2; i <= w - 1; ++i) mu[i] = g[i] - g[i + 1];

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 2; i <= w - 2; ++i) {
    const double xi = mu[i] - mu[i + 1];
    const double weight = static_cast<double>(i + 1) / static_cast<double>(i);
    const double score = weight * weight * xi / range;
    out.scores.push_back(score);
    if (score >= best) {
      best = score;
      out.m_p = i;
    }
  }
  return out;
}

CenterSelection select_centers(std::span<const std::size_t> gamma_order,
                               std::span<const double> rho, std::span<const double> delta,
                               std::size_t m_p) {
  CenterSelection out;
  const std::size_t n = gamma_order.size();
  if (n == 0) return out;
  if (m_p < 1) throw std::invalid_argument("select_centers: m_p must be >= 1");

  const std::size_t top = std::max<std::size_t>(1, isqrt(n));
  double rho_sum = 0.0;
  double delta_sum = 0.0;
  for (std::size_t r = 0; r < top; ++r) {
    rho_sum += rho[gamma_order[r]];
    delta_sum += delta[gamma_order[r]];
  }
  out.rho_threshold = rho_sum / static_cast<double>(top);
  out.delta_threshold = delta_sum / static_cast<double>(top);

  const std::size_t count = std::min(m_p, n);
  out.candidates.assign(gamma_order.begin(), gamma_order.begin() + static_cast<std::ptrdiff_t>(count));
  for (std::size_t p : out.candidates)
    if (rho[p] > out.rho_threshold && delta[p] > out.delta_threshold) out.centers.push_back(p);
  if (out.centers.empty()) {
    out.centers.push_back(gamma_order[0]);
    out.kept_top = true;
  }
  return out;
}

Assignment assign(std::span<const std::size_t> rho_order, std::span<const std::size_t> nhd,
                  std::span<const std::size_t> centers, const DistanceFn& distance) {
  if (centers.empty()) throw std::invalid_argument("assign: no centers");
  Assignment out;
  out.labels.assign(rho_order.size(), -1);
  for (std::size_t c = 0; c < centers.size(); ++c) out.labels[centers[c]] = static_cast<int>(c);

  for (std::size_t i : rho_order) {
    if (out.labels[i] >= 0) continue;
    if (nhd[i] == kNoPoint) {
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = distance(i, centers[c]);
        if (d < best) {
          best = d;
          nearest = c;
        }
      }
      out.labels[i] = static_cast<int>(nearest);
      out.root_reassigned = true;
      continue;
    }
    out.labels[i] = out.labels[nhd[i]];
  }
  return out;
}

ClusteringResult run_sktdpc(const Dataset& data, std::size_t k, const RunOptions& options) {
  const std::size_t n = data.size();
  check_k(k, n);
  ClusteringResult result;
  const auto start = Clock::now();

  auto t = Clock::now();
  const KdTree tree(data);
  result.timings.build_tree = seconds_since(t);

  t = Clock::now();
  KnnGraph graph = knn_all(tree, k, options.workers);
  result.timings.knn = seconds_since(t);
  result.counters.knn_evaluations = graph.cache.evaluations();
  result.counters.knn_query_evaluations = graph.query_evaluations;

  t = Clock::now();
  DensityResult density = local_density(graph.neighbors);
  result.timings.density = seconds_since(t);
  if (density.infinite_count > 0) result.flags.emplace_back("infinite-density");

  t = Clock::now();
  SeparationResult sep = separation(density.rho_order, graph.neighbors, graph.cache, data);
  result.timings.separation = seconds_since(t);

  t = Clock::now();
  DecisionResult decision = decision_values(density.rho, sep.delta);
  const MutationPoint mp = mutation_point(decision.gamma_order, decision.gamma);
  if (mp.small_n) result.flags.emplace_back("small-n");
  if (mp.flat) result.flags.emplace_back("flat-window");
  CenterSelection selection =
      select_centers(decision.gamma_order, density.rho, sep.delta, mp.m_p);
  if (selection.kept_top) result.flags.emplace_back("kept-top");
  result.timings.centers = seconds_since(t);

  t = Clock::now();
  SparseDistanceMatrix& cache = graph.cache;
  Assignment assignment =
      assign(density.rho_order, sep.nhd, selection.centers, [&](std::size_t i, std::size_t j) {
        if (auto hit = cache.find(i, j)) return *hit;
        return euclidean(data.point(i), data.point(j));
      });
  if (assignment.root_reassigned) result.flags.emplace_back("root-reassigned");
  result.timings.assign = seconds_since(t);
  result.timings.total = seconds_since(start);

  result.counters.separation_evaluations = sep.new_evaluations;
  result.counters.total_evaluations = cache.evaluations();
  result.counters.stored_pairs = cache.size();
  result.counters.full_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  result.counters.intersection_hits = sep.intersection_hits;
  result.counters.fallback_points = sep.fallback_points;

  result.centers = std::move(selection.centers);
  result.candidate_centers = std::move(selection.candidates);
  result.m_p = mp.m_p;
  result.labels = std::move(assignment.labels);
  result.profile = DpcProfile{std::move(density.rho), std::move(density.rho_order),
                              std::move(sep.delta),   std::move(sep.nhd),
                              std::move(decision.gamma), std::move(decision.gamma_order)};
  return result;
}

}  // namespace sktdpc
