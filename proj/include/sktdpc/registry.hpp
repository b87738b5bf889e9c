#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sktdpc/dataset.hpp"

namespace sktdpc {

/// A benchmark dataset known by name. Files live in a data directory as
/// `<name>.csv`: comma separated features with the class label last
/// (tools/fetch_datasets.sh produces them from the upstream sources).
struct DatasetInfo {
  std::string name;
  std::size_t points;
  std::size_t dim;
  std::size_t classes;
  std::string source_url;
  bool synthetic;
};

const std::vector<DatasetInfo>& dataset_registry();
const DatasetInfo* find_dataset(std::string_view name);

/// Default data directory: $SKTDPC_DATA_DIR, else the `data/` directory of
/// the source tree this binary was built from.
std::filesystem::path default_data_dir();

/// Loads a registered dataset and checks its shape against the registry.
/// Throws std::runtime_error when the file is missing or has the wrong shape.
Dataset load_registered(std::string_view name, const std::filesystem::path& data_dir);

/// Resolves `source` as a generated fixture ("blobs:ss2", "blobs:s1"), a
/// registered name, or a file path read with `file_options`. `seed` only
/// affects generated fixtures.
Dataset resolve_dataset(std::string_view source, const std::filesystem::path& data_dir,
                        const LoadOptions& file_options,
                        std::optional<std::uint64_t> seed = std::nullopt);

namespace fixtures {

/// 300 points in two well separated 2-D Gaussian blobs.
Dataset ss2_like(std::uint64_t seed = 2);
/// 5000 points in 15 2-D Gaussian blobs on a 5 x 3 grid.
Dataset s1_like(std::uint64_t seed = 1);
/// n points uniform in [0, 1)^dim.
Dataset uniform(std::size_t n, std::size_t dim, std::uint64_t seed);
/// Random blob mixture of n points (between 2 and 6 blobs).
Dataset random_blobs(std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace fixtures

}  // namespace sktdpc
