#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sktdpc/dataset.hpp"
#include "sktdpc/dpc.hpp"
#include "sktdpc/report.hpp"

namespace sktdpc::cli {

/// Bad flags or parameter values; the front end exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataOptions {
  std::string input;
  std::filesystem::path data_dir;
  bool normalize = true;
  /// Label column for plain files (negative counts from the end).
  std::optional<int> label_col;
  std::optional<std::size_t> pca;
  std::optional<std::uint64_t> seed;
};

struct AlgorithmParams {
  /// "sktdpc", "sktdpc-ref" (dense reference) or "dpc" (cut-off density).
  std::string algorithm = "sktdpc";
  std::optional<std::size_t> k;
  std::optional<double> dc;
  std::optional<double> dc_percent;
  std::optional<std::size_t> n_centers;
  unsigned workers = 1;
};

/// Loads (or generates) the input, then applies normalization and PCA.
Dataset prepare(const DataOptions& options);

/// Throws UsageError when the parameters do not fit the algorithm or n.
void validate(const AlgorithmParams& params, std::size_t n);

ClusteringResult run_algorithm(const Dataset& data, const AlgorithmParams& params);

/// Runs `repeats` times, checks that every repeat gives the same clustering
/// and averages the timings. Scores are filled when the data has labels.
RunReport run_cell(const Dataset& data, const AlgorithmParams& params, std::size_t repeats,
                   bool normalized, ClusteringResult* last = nullptr);

struct ClusterOptions {
  DataOptions data;
  AlgorithmParams params;
  std::size_t repeats = 1;
  /// Labels file; empty writes labels to `out`.
  std::string output;
  /// Report file; empty skips it.
  std::string report;
};

RunReport cmd_cluster(const ClusterOptions& options, std::ostream& out);

struct SuiteCell {
  std::string dataset;
  AlgorithmParams params;
  std::optional<bool> normalize;
  std::size_t line = 0;
};

/// One cell per line: `dataset algorithm [key=value ...]` with keys k, dc,
/// dc_percent, n_centers, normalize (on|off). '#' starts a comment.
std::vector<SuiteCell> parse_suite(std::istream& in);

struct BenchOptions {
  std::string suite;
  std::size_t repeats = 1;
  std::filesystem::path data_dir;
  bool normalize = true;
  std::optional<int> label_col;
  std::optional<std::uint64_t> seed;
  /// Cells run concurrently on this many threads.
  unsigned jobs = 1;
  std::string report;
};

/// Failed cells are reported with status = error and the suite carries on.
std::vector<RunReport> cmd_bench(const BenchOptions& options, std::ostream& out);

enum class PlotKind { kDecisionGraph, kGamma, kScatter };
PlotKind parse_plot_kind(const std::string& kind);

struct PlotOptions {
  PlotKind kind = PlotKind::kDecisionGraph;
  DataOptions data;
  AlgorithmParams params;
  std::size_t max_ranks = 0;
  std::string output;
};

void cmd_plot(const PlotOptions& options, std::ostream& out);

struct SweepOptions {
  DataOptions data;
  AlgorithmParams params;
  std::size_t k_min = 2;
  std::size_t k_max = 10;
  std::string output;
};

struct SweepRow {
  std::size_t k = 0;
  RunReport report;
};

/// CSV with one row per k: k,clusters,m_p,acc,ami,ari,nmi,fmi,evaluations,ratio,seconds.
std::vector<SweepRow> cmd_sweep(const SweepOptions& options, std::ostream& out);

}  // namespace sktdpc::cli
