#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "sktdpc/dataset.hpp"
#include "sktdpc/dpc.hpp"

namespace sktdpc::svg {

// Plots are standalone SVG documents: no scripts, no external fonts or images.

/// rho on x, delta on y; selected centers drawn as red diamonds.
void decision_graph(std::ostream& out, const ClusteringResult& result, const std::string& title);

/// gamma sorted descending (first `max_ranks` ranks) as bars; centers
/// highlighted and the mutation point marked with a dashed line.
void gamma_ranks(std::ostream& out, const ClusteringResult& result, const std::string& title,
                 std::size_t max_ranks = 0);

/// 2-D points colored by label. Throws std::invalid_argument unless the data
/// has exactly two features and at least one point.
void scatter(std::ostream& out, const Dataset& data, std::span<const int> labels,
             std::span<const std::size_t> centers, const std::string& title);

}  // namespace sktdpc::svg
