#include "sktdpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sktdpc::metrics {

namespace {

std::vector<std::size_t> compact(std::span<const int> labels, std::size_t& distinct) {
  std::unordered_map<int, std::size_t> ids;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[i] = ids.try_emplace(labels[i], ids.size()).first->second;
  distinct = ids.size();
  return out;
}

double pairs(std::int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

// One nonzero per row and per column: the two partitions coincide.
bool identical(const ContingencyTable& t) {
  if (t.rows != t.cols) return false;
  for (std::size_t r = 0; r < t.rows; ++r) {
    std::size_t nonzero = 0;
    for (std::size_t c = 0; c < t.cols; ++c) nonzero += t(r, c) != 0;
    if (nonzero != 1) return false;
  }
  for (std::size_t c = 0; c < t.cols; ++c) {
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < t.rows; ++r) nonzero += t(r, c) != 0;
    if (nonzero != 1) return false;
  }
  return true;
}

double degenerate(const ContingencyTable& t) { return identical(t) ? 1.0 : 0.0; }

struct PairStats {
  double index = 0.0;
  double rows = 0.0;
  double cols = 0.0;
};

PairStats pair_stats(const ContingencyTable& t) {
  PairStats s;
  for (std::int64_t c : t.counts) s.index += pairs(c);
  for (std::int64_t a : t.row_sums) s.rows += pairs(a);
  for (std::int64_t b : t.col_sums) s.cols += pairs(b);
  return s;
}

}  // namespace

ContingencyTable ContingencyTable::from_counts(std::size_t rows, std::size_t cols,
                                               std::vector<std::int64_t> counts) {
  if (counts.size() != rows * cols) throw std::invalid_argument("contingency: shape mismatch");
  ContingencyTable t;
  t.rows = rows;
  t.cols = cols;
  t.counts = std::move(counts);
  t.row_sums.assign(rows, 0);
  t.col_sums.assign(cols, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::int64_t v = t.counts[r * cols + c];
      if (v < 0) throw std::invalid_argument("contingency: negative count");
      t.row_sums[r] += v;
      t.col_sums[c] += v;
      t.total += v;
    }
  return t;
}

ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("contingency: label lengths differ (" +
                                std::to_string(truth.size()) + " vs " +
                                std::to_string(pred.size()) + ")");
  if (truth.empty()) throw std::invalid_argument("contingency: empty labelling");
  std::size_t rows = 0;
  std::size_t cols = 0;
  const auto u = compact(truth, rows);
  const auto v = compact(pred, cols);
  std::vector<std::int64_t> counts(rows * cols, 0);
  for (std::size_t i = 0; i < u.size(); ++i) ++counts[u[i] * cols + v[i]];
  return ContingencyTable::from_counts(rows, cols, std::move(counts));
}

std::vector<int> min_cost_assignment(std::span<const double> cost, std::size_t rows,
                                     std::size_t cols) {
  if (cost.size() != rows * cols) throw std::invalid_argument("assignment: shape mismatch");
  // Potentials method on an n x m matrix with n <= m; transpose if needed.
  const bool transposed = rows > cols;
  const std::size_t n = transposed ? cols : rows;
  const std::size_t m = transposed ? rows : cols;
  auto a = [&](std::size_t i, std::size_t j) {
    return transposed ? cost[(j - 1) * cols + (i - 1)] : cost[(i - 1) * cols + (j - 1)];
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> match(rows, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    if (transposed)
      match[j - 1] = static_cast<int>(p[j] - 1);
    else
      match[p[j] - 1] = static_cast<int>(j - 1);
  }
  return match;
}

double acc(const ContingencyTable& t) {
  if (t.total == 0) return 0.0;
  std::vector<double> cost(t.counts.size());
  for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = -static_cast<double>(t.counts[i]);
  const auto match = min_cost_assignment(cost, t.rows, t.cols);
  std::int64_t matched = 0;
  for (std::size_t r = 0; r < t.rows; ++r)
    if (match[r] >= 0) matched += t(r, static_cast<std::size_t>(match[r]));
  return static_cast<double>(matched) / static_cast<double>(t.total);
}

double ari(const ContingencyTable& t) {
  const PairStats s = pair_stats(t);
  const double expected = s.rows * s.cols / pairs(t.total);
  const double max = 0.5 * (s.rows + s.cols);
  if (max - expected == 0.0 || !std::isfinite(expected)) return degenerate(t);
  return (s.index - expected) / (max - expected);
}

double fmi(const ContingencyTable& t) {
  const PairStats s = pair_stats(t);
  const double denom = std::sqrt(s.rows * s.cols);
  if (denom == 0.0) return degenerate(t);
  return s.index / denom;
}

double entropy(std::span<const std::int64_t> sums, std::int64_t total) {
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (std::int64_t s : sums)
    if (s > 0) {
      const double p = static_cast<double>(s) / n;
      h -= p * std::log(p);
    }
  return h;
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total);
  double mi = 0.0;
  for (std::size_t r = 0; r < t.rows; ++r)
    for (std::size_t c = 0; c < t.cols; ++c) {
      const auto nij = t(r, c);
      if (nij == 0) continue;
      const double x = static_cast<double>(nij);
      mi += x / n *
            (std::log(x * n) - std::log(static_cast<double>(t.row_sums[r]) *
                                        static_cast<double>(t.col_sums[c])));
    }
  return std::max(0.0, mi);
}

double expected_mutual_information(const ContingencyTable& t) {
  const std::int64_t n = t.total;
  const double nd = static_cast<double>(n);
  auto lg = [](std::int64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  const double lg_n = lg(n);
  double emi = 0.0;
  for (std::int64_t a : t.row_sums) {
    for (std::int64_t b : t.col_sums) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      const double fixed = lg(a) + lg(b) + lg(n - a) + lg(n - b) - lg_n;
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const double x = static_cast<double>(nij);
        const double log_p = fixed - lg(nij) - lg(a - nij) - lg(b - nij) - lg(n - a - b + nij);
        emi += x / nd *
               (std::log(nd * x) - std::log(static_cast<double>(a) * static_cast<double>(b))) *
               std::exp(log_p);
      }
    }
  }
  return emi;
}

double nmi(const ContingencyTable& t) {
  const double hu = entropy(t.row_sums, t.total);
  const double hv = entropy(t.col_sums, t.total);
  const double denom = std::sqrt(hu * hv);
  if (denom == 0.0) return degenerate(t);
  return std::min(1.0, mutual_information(t) / denom);
}

double ami(const ContingencyTable& t) {
  const double hu = entropy(t.row_sums, t.total);
  const double hv = entropy(t.col_sums, t.total);
  if (hu == 0.0 && hv == 0.0) return degenerate(t);
  if (identical(t)) return 1.0;
  const double emi = expected_mutual_information(t);
  const double denom = 0.5 * (hu + hv) - emi;
  if (denom == 0.0) return degenerate(t);
  return (mutual_information(t) - emi) / denom;
}

Scores score_all(std::span<const int> truth, std::span<const int> pred) {
  const ContingencyTable t = contingency(truth, pred);
  return Scores{acc(t), ami(t), ari(t), nmi(t), fmi(t)};
}

}  // namespace sktdpc::metrics
