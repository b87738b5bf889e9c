#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sktdpc {

/// Thrown when delimited input cannot be turned into a Dataset.
/// `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Thrown when an input file does not exist.
class InputNotFound : public std::runtime_error {
 public:
  explicit InputNotFound(const std::filesystem::path& path)
      : std::runtime_error("cannot open '" + path.string() + "': no such file"), path_(path) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// n points in a dim-dimensional feature space, stored row-major, with
/// optional ground-truth class ids.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, std::vector<double> values, std::string name = {});

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t h) const { return values_[i * dim_ + h]; }
  std::span<const double> values() const noexcept { return values_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::vector<int>& labels() const { return labels_.value(); }
  /// Original label tokens, indexed by dense id.
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }
  void set_labels(std::vector<int> labels, std::vector<std::string> names = {});
  void clear_labels();

  /// Number of distinct label ids (0 when unlabeled).
  std::size_t label_count() const;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::optional<std::vector<int>> labels_;
  std::vector<std::string> label_names_;
  std::string name_;
};

enum class Delimiter { kAuto, kComma, kWhitespace };

struct LoadOptions {
  Delimiter delimiter = Delimiter::kAuto;
  /// Column holding the class label; negative counts from the end (-1 = last).
  std::optional<int> label_column;
  bool has_header = false;
};

Dataset parse(std::istream& in, const LoadOptions& options = {}, std::string name = {});
Dataset load(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes comma separated rows with 17 significant digits; the label (if any)
/// is written as the last column using the original tokens.
void write(std::ostream& out, const Dataset& d);
void save(const std::filesystem::path& path, const Dataset& d);

enum class Normalization { kNone, kMinMax };

/// Min-max maps each feature to [0,1]; constant features become 0.
Dataset normalize(const Dataset& d, Normalization mode);

/// Projects mean-centred data onto the `target_dim` leading principal axes.
Dataset pca_reduce(const Dataset& d, std::size_t target_dim);

struct BlobSpec {
  std::vector<std::vector<double>> centers;
  /// One standard deviation per center, or a single value shared by all.
  std::vector<double> spread;
  std::size_t points_per_cluster = 0;
  std::uint64_t seed = 0;
};

Dataset generate_gaussian_blobs(const BlobSpec& spec);

}  // namespace sktdpc
