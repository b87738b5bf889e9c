#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sktdpc::metrics {

/// Co-occurrence counts between true classes (rows) and predicted clusters
/// (columns). Labels are compacted to dense ids in first-occurrence order.
struct ContingencyTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Row-major rows x cols.
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  std::int64_t operator()(std::size_t r, std::size_t c) const { return counts[r * cols + c]; }

  /// Builds a table from explicit counts (row-major).
  static ContingencyTable from_counts(std::size_t rows, std::size_t cols,
                                      std::vector<std::int64_t> counts);
};

ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred);

/// Minimum-cost perfect assignment for a rectangular cost matrix (row-major,
/// rows <= cols is not required). Returns the column matched to each row, or
/// -1 for rows left unmatched when rows > cols.
std::vector<int> min_cost_assignment(std::span<const double> cost, std::size_t rows,
                                     std::size_t cols);

/// Best one-to-one matching of clusters to classes, as a fraction of n.
double acc(const ContingencyTable& t);
double ari(const ContingencyTable& t);
/// Mutual information over sqrt(H(U) H(V)), natural logs.
double nmi(const ContingencyTable& t);
/// Adjusted for chance with the exact expected mutual information under the
/// permutation model; normalised by the arithmetic mean of the entropies.
double ami(const ContingencyTable& t);
double fmi(const ContingencyTable& t);

double mutual_information(const ContingencyTable& t);
double expected_mutual_information(const ContingencyTable& t);
double entropy(std::span<const std::int64_t> sums, std::int64_t total);

struct Scores {
  double acc = 0.0;
  double ami = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
  double fmi = 0.0;
};

Scores score_all(std::span<const int> truth, std::span<const int> pred);

}  // namespace sktdpc::metrics
