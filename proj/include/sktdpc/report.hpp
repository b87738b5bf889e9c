#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sktdpc/dpc.hpp"
#include "sktdpc/metrics.hpp"

namespace sktdpc {

/// One benchmark or clustering run.
struct RunReport {
  std::string dataset;
  std::string algorithm;
  /// Hyper-parameters in insertion order, e.g. {"k", "3"}.
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t n = 0;
  std::size_t dim = 0;
  bool normalized = false;

  std::size_t clusters = 0;
  std::vector<std::size_t> centers;
  std::size_t m_p = 0;
  std::vector<std::string> flags;
  /// FNV-1a of the label vector, to compare runs without the labels file.
  std::string labels_digest;

  std::uint64_t distance_evaluations = 0;
  std::uint64_t full_pairs = 0;
  std::size_t stored_pairs = 0;
  std::size_t intersection_hits = 0;
  std::size_t fallback_points = 0;

  std::optional<metrics::Scores> scores;

  std::size_t repeats = 1;
  bool deterministic = true;
  std::string error;

  PhaseTimings mean_timings;
  std::vector<double> repeat_times;

  double ratio() const {
    return full_pairs == 0 ? 1.0
                           : static_cast<double>(distance_evaluations) /
                                 static_cast<double>(full_pairs);
  }
};

std::string labels_digest(std::span<const int> labels);

/// Fills the counters and clustering fields from a result.
void fill_report(RunReport& report, const ClusteringResult& result);

/// Flat "key = value" document with [run], [metrics] and [timings]
/// sections. Everything outside [timings] is reproducible for fixed inputs.
void write_report(std::ostream& out, const RunReport& report);

/// Parsed report: section name -> key -> raw value.
using ReportDocument = std::map<std::string, std::map<std::string, std::string>>;

/// Splits a stream holding one or more reports (each starting at [run]).
std::vector<ReportDocument> parse_reports(std::istream& in);

}  // namespace sktdpc
