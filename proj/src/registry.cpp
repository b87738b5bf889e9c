#include "sktdpc/registry.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>

#ifndef SKTDPC_SOURCE_DATA_DIR
#define SKTDPC_SOURCE_DATA_DIR "data"
#endif

namespace sktdpc {

const std::vector<DatasetInfo>& dataset_registry() {
  static const std::vector<DatasetInfo> registry = {
      {"flame", 240, 2, 2, "http://cs.joensuu.fi/sipu/datasets/flame.txt", true},
      {"spiral", 312, 2, 3, "http://cs.joensuu.fi/sipu/datasets/spiral.txt", true},
      {"aggregation", 788, 2, 7, "http://cs.joensuu.fi/sipu/datasets/Aggregation.txt", true},
      {"r15", 600, 2, 15, "http://cs.joensuu.fi/sipu/datasets/R15.txt", true},
      {"s1", 5000, 2, 15, "http://cs.joensuu.fi/sipu/datasets/s1.txt", true},
      {"s3", 5000, 2, 15, "http://cs.joensuu.fi/sipu/datasets/s3.txt", true},
      {"a1", 3000, 2, 20, "http://cs.joensuu.fi/sipu/datasets/a1.txt", true},
      {"a3", 7500, 2, 50, "http://cs.joensuu.fi/sipu/datasets/a3.txt", true},
      {"seeds", 210, 7, 3,
       "https://archive.ics.uci.edu/ml/machine-learning-databases/00236/seeds_dataset.txt", false},
      {"iris", 150, 4, 3, "https://archive.ics.uci.edu/ml/machine-learning-databases/iris/iris.data",
       false},
      {"banknote", 1372, 4, 2,
       "https://archive.ics.uci.edu/ml/machine-learning-databases/00267/"
       "data_banknote_authentication.txt",
       false},
      {"wine", 178, 13, 3, "https://archive.ics.uci.edu/ml/machine-learning-databases/wine/wine.data",
       false},
      {"ecoli", 336, 7, 8, "https://archive.ics.uci.edu/ml/machine-learning-databases/ecoli/ecoli.data",
       false},
      {"parking", 35501, 5, 3, "https://archive.ics.uci.edu/ml/datasets/Parking+Birmingham", false},
      {"pendigits", 10992, 16, 10,
       "https://archive.ics.uci.edu/ml/machine-learning-databases/pendigits/", false},
  };
  return registry;
}

const DatasetInfo* find_dataset(std::string_view name) {
  for (const auto& info : dataset_registry())
    if (info.name == name) return &info;
  return nullptr;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("SKTDPC_DATA_DIR"); env && *env) return env;
  return SKTDPC_SOURCE_DATA_DIR;
}

Dataset load_registered(std::string_view name, const std::filesystem::path& data_dir) {
  const DatasetInfo* info = find_dataset(name);
  if (!info) throw std::runtime_error("unknown dataset '" + std::string(name) + "'");
  const auto path = data_dir / (info->name + ".csv");
  if (!std::filesystem::exists(path)) throw InputNotFound(path);
  LoadOptions options;
  options.delimiter = Delimiter::kComma;
  options.label_column = -1;
  Dataset d = load(path, options);
  d.set_name(info->name);
  if (d.size() != info->points || d.dim() != info->dim || d.label_count() != info->classes)
    throw std::runtime_error("dataset '" + info->name + "' has shape " + std::to_string(d.size()) +
                             "x" + std::to_string(d.dim()) + " with " +
                             std::to_string(d.label_count()) + " classes, expected " +
                             std::to_string(info->points) + "x" + std::to_string(info->dim) +
                             " with " + std::to_string(info->classes));
  return d;
}

Dataset resolve_dataset(std::string_view source, const std::filesystem::path& data_dir,
                        const LoadOptions& file_options, std::optional<std::uint64_t> seed) {
  if (source == "blobs:ss2") return seed ? fixtures::ss2_like(*seed) : fixtures::ss2_like();
  if (source == "blobs:s1") return seed ? fixtures::s1_like(*seed) : fixtures::s1_like();
  if (find_dataset(source) && !std::filesystem::exists(std::filesystem::path(source)))
    return load_registered(source, data_dir);
  const std::filesystem::path path(source);
  return load(path, file_options);
}

namespace fixtures {

Dataset ss2_like(std::uint64_t seed) {
  BlobSpec spec;
  spec.centers = {{0.0, 0.0}, {8.0, 3.0}};
  spec.spread = {1.0};
  spec.points_per_cluster = 150;
  spec.seed = seed;
  Dataset d = generate_gaussian_blobs(spec);
  d.set_name("ss2-like");
  return d;
}

Dataset s1_like(std::uint64_t seed) {
  BlobSpec spec;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 5; ++col)
      spec.centers.push_back({10.0 * col, 10.0 * row});
  spec.spread = {1.2};
  spec.points_per_cluster = 334;
  spec.seed = seed;
  Dataset all = generate_gaussian_blobs(spec);
  // Trim the last ten clusters to 333 points each: 5 * 334 + 10 * 333 = 5000.
  std::vector<double> values;
  std::vector<int> labels;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int c = all.labels()[i];
    const std::size_t within = i - static_cast<std::size_t>(c) * 334;
    if (c >= 5 && within == 333) continue;
    values.insert(values.end(), all.point(i).begin(), all.point(i).end());
    labels.push_back(c);
  }
  Dataset d(2, std::move(values), "s1-like");
  d.set_labels(std::move(labels));
  return d;
}

Dataset uniform(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> values(n * dim);
  for (double& v : values) v = u(rng);
  return Dataset(dim, std::move(values), "uniform");
}

Dataset random_blobs(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> blobs(2, 6);
  std::uniform_real_distribution<double> where(0.0, 20.0);
  std::uniform_real_distribution<double> spread(0.5, 2.0);
  const int c = blobs(rng);
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(c), std::vector<double>(dim));
  std::vector<double> sd(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i) {
    for (double& x : centers[static_cast<std::size_t>(i)]) x = where(rng);
    sd[static_cast<std::size_t>(i)] = spread(rng);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, c - 1);
  std::vector<double> values;
  std::vector<int> labels;
  values.reserve(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const int b = pick(rng);
    for (std::size_t h = 0; h < dim; ++h)
      values.push_back(centers[static_cast<std::size_t>(b)][h] + sd[static_cast<std::size_t>(b)] * normal(rng));
    labels.push_back(b);
  }
  Dataset d(dim, std::move(values), "random-blobs");
  d.set_labels(std::move(labels));
  return d;
}

}  // namespace fixtures

}  // namespace sktdpc
