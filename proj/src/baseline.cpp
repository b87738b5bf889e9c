#include "sktdpc/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sktdpc::baseline {

namespace {

using Clock = std::chrono::steady_clock;

struct Candidate {
  double distance;
  std::size_t index;
  bool operator<(const Candidate& o) const {
    return distance < o.distance || (distance == o.distance && index < o.index);
  }
};

std::vector<std::size_t> order_desc(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// Nearest point earlier in `order` (ties by index); the first point instead
// gets its largest distance to anything.
void exhaustive_separation(const FullDistanceMatrix& m, const std::vector<std::size_t>& order,
                           std::vector<double>& delta, std::vector<std::size_t>& nhd) {
  const std::size_t n = m.size();
  delta.assign(n, 0.0);
  nhd.assign(n, kNoPoint);
  for (std::size_t j = 0; j < n; ++j) delta[order[0]] = std::max(delta[order[0]], m(order[0], j));
  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t i = order[r];
    Candidate best{std::numeric_limits<double>::infinity(), kNoPoint};
    for (std::size_t q = 0; q < r; ++q) {
      const Candidate c{m(i, order[q]), order[q]};
      if (c < best) best = c;
    }
    delta[i] = best.distance;
    nhd[i] = best.index;
  }
}

std::vector<int> propagate(const FullDistanceMatrix& m, const std::vector<std::size_t>& nhd,
                           const std::vector<std::size_t>& centers, bool& root_reassigned) {
  const std::size_t n = nhd.size();
  std::vector<int> labels(n, -1);
  for (std::size_t c = 0; c < centers.size(); ++c) labels[centers[c]] = static_cast<int>(c);
  root_reassigned = false;
  std::vector<std::size_t> chain;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t p = start;
    chain.clear();
    while (labels[p] < 0 && nhd[p] != kNoPoint) {
      chain.push_back(p);
      p = nhd[p];
    }
    if (labels[p] < 0) {
      // Chain ended at the densest point, which is not a center.
      std::size_t nearest = 0;
      for (std::size_t c = 1; c < centers.size(); ++c)
        if (m(p, centers[c]) < m(p, centers[nearest])) nearest = c;
      labels[p] = static_cast<int>(nearest);
      root_reassigned = true;
    }
    for (std::size_t q : chain) labels[q] = labels[p];
  }
  return labels;
}

}  // namespace

FullDistanceMatrix::FullDistanceMatrix(const Dataset& d) : n_(d.size()) {
  upper_.resize(n_ < 2 ? 0 : n_ * (n_ - 1) / 2);
  std::size_t at = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) upper_[at++] = euclidean(d.point(i), d.point(j));
}

FullDistanceMatrix full_matrix(const Dataset& d) { return FullDistanceMatrix(d); }

NeighborSet brute_knn(const FullDistanceMatrix& m, std::size_t i, std::size_t k) {
  const std::size_t n = m.size();
  check_k(k, n);
  if (i >= n) throw std::out_of_range("brute_knn: point out of range");
  std::vector<Candidate> all;
  all.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) all.push_back({m(i, j), j});
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  NeighborSet out{i, {}};
  for (std::size_t r = 0; r < k; ++r) out.neighbors.push_back({all[r].index, all[r].distance});
  return out;
}

double dc_from_percent(const FullDistanceMatrix& m, double percent) {
  const std::size_t n = m.size();
  std::vector<double> d;
  d.reserve(m.pair_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.push_back(m(i, j));
  if (d.empty()) throw std::invalid_argument("dc_from_percent: need at least two points");
  const auto pos = std::min(d.size() - 1, static_cast<std::size_t>(std::round(
                                              percent / 100.0 * static_cast<double>(d.size()))));
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(pos), d.end());
  return d[pos];
}

ClusteringResult dpc_original(const Dataset& d, double dc, std::size_t n_centers) {
  const auto start = Clock::now();
  const std::size_t n = d.size();
  if (!(dc > 0.0)) throw std::invalid_argument("dpc_original: dc must be positive");
  if (n_centers < 1 || n_centers > n)
    throw std::invalid_argument("dpc_original: n_centers outside [1, n]");
  const FullDistanceMatrix m(d);

  ClusteringResult out;
  DpcProfile& p = out.profile;
  p.rho.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) < dc) {
        p.rho[i] += 1.0;
        p.rho[j] += 1.0;
      }
  p.rho_order = order_desc(p.rho);
  exhaustive_separation(m, p.rho_order, p.delta, p.nhd);
  p.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.gamma[i] = p.rho[i] * p.delta[i];
  p.gamma_order = order_desc(p.gamma);

  out.centers.assign(p.gamma_order.begin(), p.gamma_order.begin() + static_cast<std::ptrdiff_t>(n_centers));
  out.candidate_centers = out.centers;
  out.m_p = n_centers;
  bool reassigned = false;
  out.labels = propagate(m, p.nhd, out.centers, reassigned);
  if (reassigned) out.flags.emplace_back("root-reassigned");
  out.counters.full_pairs = m.pair_count();
  out.counters.total_evaluations = m.pair_count();
  out.counters.stored_pairs = m.pair_count();
  out.timings.total = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

ClusteringResult sktdpc_reference(const Dataset& d, std::size_t k) {
  const auto start = Clock::now();
  check_k(k, d.size());
  const FullDistanceMatrix m(d);
  const double matrix_time = std::chrono::duration<double>(Clock::now() - start).count();
  ClusteringResult out = sktdpc_reference(m, k);
  out.timings.knn += matrix_time;
  out.timings.total = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

ClusteringResult sktdpc_reference(const FullDistanceMatrix& m, std::size_t k) {
  auto start = Clock::now();
  const std::size_t n = m.size();
  check_k(k, n);
  ClusteringResult out;
  DpcProfile& p = out.profile;

  p.rho.assign(n, 0.0);
  std::size_t infinite = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const NeighborSet nn = brute_knn(m, i, k);
    double sum = 0.0;
    for (const Neighbor& nb : nn.neighbors) sum += nb.distance;
    if (sum == 0.0) ++infinite;
    p.rho[i] = sum == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / sum;
  }
  if (infinite > 0) out.flags.emplace_back("infinite-density");
  p.rho_order = order_desc(p.rho);
  out.timings.knn = std::chrono::duration<double>(Clock::now() - start).count();

  start = Clock::now();
  exhaustive_separation(m, p.rho_order, p.delta, p.nhd);
  out.timings.separation = std::chrono::duration<double>(Clock::now() - start).count();

  start = Clock::now();
  p.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.gamma[i] = std::isinf(p.rho[i]) ? p.rho[i] : p.rho[i] * p.delta[i];
  p.gamma_order = order_desc(p.gamma);

  std::size_t w = 0;
  while ((w + 1) * (w + 1) <= n) ++w;
  // sorted[r - 1] is the decision value at rank r.
  std::vector<double> sorted(n);
  for (std::size_t r = 0; r < n; ++r) sorted[r] = p.gamma[p.gamma_order[r]];

  std::size_t m_p = 2;
  if (w < 4) {
    out.flags.emplace_back("small-n");
  } else {
    double lo = sorted[1];
    double hi = sorted[1];
    for (std::size_t r = 2; r <= w; ++r) {
      lo = std::min(lo, sorted[r - 1]);
      hi = std::max(hi, sorted[r - 1]);
    }
    const double range = hi - lo;
    if (!(range > 0.0) || !std::isfinite(range)) {
      out.flags.emplace_back("flat-window");
      m_p = w - 2;
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 2; i + 2 <= w; ++i) {
        const double first = sorted[i - 1] - sorted[i];
        const double next = sorted[i] - sorted[i + 1];
        const double factor = (static_cast<double>(i + 1) / static_cast<double>(i));
        const double score = factor * factor * (first - next) / range;
        if (score >= best) {
          best = score;
          m_p = i;
        }
      }
    }
  }
  out.m_p = m_p;

  const std::size_t top = std::max<std::size_t>(w, 1);
  double rho_mean = 0.0;
  double delta_mean = 0.0;
  for (std::size_t r = 0; r < top; ++r) {
    rho_mean += p.rho[p.gamma_order[r]];
    delta_mean += p.delta[p.gamma_order[r]];
  }
  rho_mean /= static_cast<double>(top);
  delta_mean /= static_cast<double>(top);
  for (std::size_t r = 0; r < std::min(m_p, n); ++r) {
    const std::size_t c = p.gamma_order[r];
    out.candidate_centers.push_back(c);
    if (p.rho[c] > rho_mean && p.delta[c] > delta_mean) out.centers.push_back(c);
  }
  if (out.centers.empty()) {
    out.centers.push_back(p.gamma_order[0]);
    out.flags.emplace_back("kept-top");
  }
  out.timings.centers = std::chrono::duration<double>(Clock::now() - start).count();

  start = Clock::now();
  bool reassigned = false;
  out.labels = propagate(m, p.nhd, out.centers, reassigned);
  if (reassigned) out.flags.emplace_back("root-reassigned");
  out.timings.assign = std::chrono::duration<double>(Clock::now() - start).count();

  out.counters.full_pairs = m.pair_count();
  out.counters.total_evaluations = m.pair_count();
  out.counters.stored_pairs = m.pair_count();
  out.timings.total = out.timings.knn + out.timings.separation + out.timings.centers + out.timings.assign;
  return out;
}

}  // namespace sktdpc::baseline
