#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace sktdpc {

/// Euclidean distance. Every module computes distances through this one
/// function so that cached, tree-computed and brute-force values agree bit for
/// bit (the per-coordinate terms are symmetric in a and b).
inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t h = 0; h < a.size(); ++h) {
    const double diff = a[h] - b[h];
    s += diff * diff;
  }
  return std::sqrt(s);
}

/// Symmetric store of the pairwise distances that were actually evaluated,
/// plus an evaluation counter. Producers count a pair once, when it first
/// enters the store, so the counter never exceeds n(n-1)/2.
///
/// Not internally synchronised: parallel producers collect pairs locally and
/// merge them through `merge`, which keeps the final content independent of
/// scheduling.
class SparseDistanceMatrix {
 public:
  struct Entry {
    std::uint32_t i;
    std::uint32_t j;
    double distance;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit SparseDistanceMatrix(std::size_t n = 0) : n_(n) {}

  std::size_t points() const noexcept { return n_; }

  /// Absent pairs yield nullopt; i == j yields 0.
  std::optional<double> find(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    const auto it = map_.find(key(i, j));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::size_t i, std::size_t j) const { return i == j || map_.contains(key(i, j)); }

  /// Returns true when the pair was not stored before.
  bool insert(std::size_t i, std::size_t j, double distance) {
    if (i == j) return false;
    return map_.insert_or_assign(key(i, j), distance).second;
  }

  /// Adds `count` to the evaluation counter.
  void count_evaluations(std::uint64_t count) noexcept { evaluations_ += count; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }

  /// Number of distinct stored pairs.
  std::size_t size() const noexcept { return map_.size(); }

  /// Inserts every entry; returns how many pairs were new.
  std::size_t merge(std::span<const Entry> entries) {
    std::size_t added = 0;
    for (const Entry& e : entries) added += insert(e.i, e.j, e.distance) ? 1 : 0;
    return added;
  }

  /// Stored pairs with i < j, sorted by (i, j).
  std::vector<Entry> entries() const;

 private:
  static std::uint64_t key(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  std::size_t n_;
  std::unordered_map<std::uint64_t, double> map_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace sktdpc
