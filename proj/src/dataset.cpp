#include "sktdpc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "sktdpc/jacobi.hpp"

namespace sktdpc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

Dataset::Dataset(std::size_t dim, std::vector<double> values, std::string name)
    : dim_(dim), values_(std::move(values)), name_(std::move(name)) {
  if (dim_ == 0 && !values_.empty())
    throw std::invalid_argument("Dataset: dimension must be positive");
  if (dim_ != 0 && values_.size() % dim_ != 0)
    throw std::invalid_argument("Dataset: value count is not a multiple of the dimension");
}

void Dataset::set_labels(std::vector<int> labels, std::vector<std::string> names) {
  if (labels.size() != size())
    throw std::invalid_argument("Dataset: label count " + std::to_string(labels.size()) +
                                " does not match point count " + std::to_string(size()));
  labels_ = std::move(labels);
  label_names_ = std::move(names);
}

void Dataset::clear_labels() {
  labels_.reset();
  label_names_.clear();
}

std::size_t Dataset::label_count() const {
  if (!labels_) return 0;
  std::vector<int> ids = *labels_;
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

void Dataset::validate() const {
  if (dim_ == 0 || values_.empty()) throw std::invalid_argument("Dataset: empty");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("Dataset: non-finite value at point " +
                                  std::to_string(i / dim_));
  if (labels_ && labels_->size() != size())
    throw std::invalid_argument("Dataset: label count mismatch");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, Delimiter delim) {
  std::vector<std::string_view> out;
  if (delim == Delimiter::kComma) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      out.push_back(trim(line.substr(start, pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

bool parse_double(std::string_view token, double& value) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

}  // namespace

Dataset parse(std::istream& in, const LoadOptions& options, std::string name) {
  std::vector<std::string> lines;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    lines.push_back(line);
    line_numbers.push_back(line_no);
  }
  std::size_t first = options.has_header ? 1 : 0;
  if (lines.size() <= first) throw ParseError(0, "no data rows");

  Delimiter delim = options.delimiter;
  if (delim == Delimiter::kAuto)
    delim = lines[first].find(',') != std::string::npos ? Delimiter::kComma
                                                        : Delimiter::kWhitespace;

  std::size_t width = 0;
  std::size_t label_index = 0;
  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::string> label_names;
  std::map<std::string, int, std::less<>> label_ids;

  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto fields = split(lines[r], delim);
    const std::size_t at = line_numbers[r];
    if (r == first) {
      width = fields.size();
      if (options.label_column) {
        const int c = *options.label_column;
        const long resolved = c < 0 ? static_cast<long>(width) + c : c;
        if (resolved < 0 || resolved >= static_cast<long>(width))
          throw ParseError(at, "label column " + std::to_string(c) + " out of range for " +
                                   std::to_string(width) + " fields");
        label_index = static_cast<std::size_t>(resolved);
      }
      const std::size_t numeric = width - (options.label_column ? 1 : 0);
      if (numeric == 0) throw ParseError(at, "no numeric columns");
    } else if (fields.size() != width) {
      throw ParseError(at, "expected " + std::to_string(width) + " fields, found " +
                               std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (options.label_column && c == label_index) {
        auto [it, inserted] =
            label_ids.try_emplace(std::string(fields[c]), static_cast<int>(label_names.size()));
        if (inserted) label_names.emplace_back(fields[c]);
        labels.push_back(it->second);
        continue;
      }
      double v = 0.0;
      if (!parse_double(fields[c], v))
        throw ParseError(at, "non-numeric field " + std::to_string(c + 1) + " '" +
                                 std::string(fields[c]) + "'");
      values.push_back(v);
    }
  }

  Dataset d(width - (options.label_column ? 1 : 0), std::move(values), std::move(name));
  if (options.label_column) d.set_labels(std::move(labels), std::move(label_names));
  return d;
}

Dataset load(const std::filesystem::path& path, const LoadOptions& options) {
  if (!std::filesystem::exists(path)) throw InputNotFound(path);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return parse(in, options, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

void write(std::ostream& out, const Dataset& d) {
  const auto saved = out.precision();
  out << std::setprecision(17);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t h = 0; h < d.dim(); ++h) {
      if (h) out << ',';
      out << d.at(i, h);
    }
    if (d.has_labels()) {
      const int id = d.labels()[i];
      out << ',';
      if (static_cast<std::size_t>(id) < d.label_names().size())
        out << d.label_names()[id];
      else
        out << id;
    }
    out << '\n';
  }
  out.precision(saved);
}

void save(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write(out, d);
}

Dataset normalize(const Dataset& d, Normalization mode) {
  if (mode == Normalization::kNone) return d;
  const std::size_t n = d.size();
  const std::size_t dim = d.dim();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < dim; ++h) {
      lo[h] = std::min(lo[h], d.at(i, h));
      hi[h] = std::max(hi[h], d.at(i, h));
    }
  std::vector<double> values(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < dim; ++h) {
      const double range = hi[h] - lo[h];
      values[i * dim + h] = range > 0.0 ? (d.at(i, h) - lo[h]) / range : 0.0;
    }
  Dataset out(dim, std::move(values), d.name());
  if (d.has_labels()) out.set_labels(d.labels(), d.label_names());
  return out;
}

Dataset pca_reduce(const Dataset& d, std::size_t target_dim) {
  const std::size_t n = d.size();
  const std::size_t dim = d.dim();
  if (target_dim < 1 || target_dim > dim)
    throw std::invalid_argument("pca_reduce: target dimension " + std::to_string(target_dim) +
                                " outside [1, " + std::to_string(dim) + "]");

  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < dim; ++h) mean[h] += d.at(i, h);
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> centred(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < dim; ++h) centred[i * dim + h] = d.at(i, h) - mean[h];

  // Sample covariance; the 1/(n-1) factor does not change the eigenvectors.
  std::vector<double> cov(dim * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a; b < dim; ++b) cov[a * dim + b] += centred[i * dim + a] * centred[i * dim + b];
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      cov[a * dim + b] /= denom;
      cov[b * dim + a] = cov[a * dim + b];
    }

  const SymmetricEigen eig = jacobi_eigen(std::move(cov), dim);

  std::vector<double> projected(n * target_dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < target_dim; ++c) {
      double s = 0.0;
      for (std::size_t h = 0; h < dim; ++h) s += centred[i * dim + h] * eig.vectors[c * dim + h];
      projected[i * target_dim + c] = s;
    }
  Dataset out(target_dim, std::move(projected), d.name());
  if (d.has_labels()) out.set_labels(d.labels(), d.label_names());
  return out;
}

Dataset generate_gaussian_blobs(const BlobSpec& spec) {
  if (spec.centers.empty()) throw std::invalid_argument("generate_gaussian_blobs: no centers");
  const std::size_t dim = spec.centers.front().size();
  if (dim == 0) throw std::invalid_argument("generate_gaussian_blobs: zero-dimensional center");
  if (spec.spread.size() != 1 && spec.spread.size() != spec.centers.size())
    throw std::invalid_argument("generate_gaussian_blobs: need one spread or one per center");
  for (double s : spec.spread)
    if (!(s > 0.0)) throw std::invalid_argument("generate_gaussian_blobs: spread must be > 0");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values;
  std::vector<int> labels;
  values.reserve(spec.centers.size() * spec.points_per_cluster * dim);
  for (std::size_t c = 0; c < spec.centers.size(); ++c) {
    if (spec.centers[c].size() != dim)
      throw std::invalid_argument("generate_gaussian_blobs: centers differ in dimension");
    const double sd = spec.spread.size() == 1 ? spec.spread[0] : spec.spread[c];
    for (std::size_t p = 0; p < spec.points_per_cluster; ++p) {
      for (std::size_t h = 0; h < dim; ++h) values.push_back(spec.centers[c][h] + sd * normal(rng));
      labels.push_back(static_cast<int>(c));
    }
  }
  Dataset d(dim, std::move(values), "blobs");
  d.set_labels(std::move(labels));
  return d;
}

}  // namespace sktdpc
