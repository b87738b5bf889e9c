#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sktdpc/baseline.hpp"
#include "sktdpc/kdtree.hpp"
#include "sktdpc/registry.hpp"

using namespace sktdpc;

namespace {

void check_against_brute(const Dataset& d, std::size_t k, unsigned workers = 1) {
  const KdTree tree(d);
  const KnnGraph g = knn_all(tree, k, workers);
  const baseline::FullDistanceMatrix m(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const NeighborSet expect = baseline::brute_knn(m, i, k);
    REQUIRE(g.neighbors[i] == expect);
  }
}

}  // namespace

TEST_CASE("three collinear points split on the varying axis") {
  const Dataset d(2, {0.0, 0.0, 0.0, 1.0, 0.0, 2.0});
  const KdTree tree(d);
  REQUIRE(tree.nodes().size() == 3);
  const auto& root = tree.nodes()[tree.root()];
  CHECK(root.split_dim == 1);
  CHECK(root.split_value == 1.0);
  CHECK(root.point == 1);
  CHECK(tree.nodes()[root.left].point == 0);
  CHECK(tree.nodes()[root.right].point == 2);
}

TEST_CASE("single point tree is one leaf") {
  const Dataset d(3, {1.0, 2.0, 3.0});
  const KdTree tree(d);
  REQUIRE(tree.nodes().size() == 1);
  CHECK(tree.nodes()[0].leaf());
  CHECK(tree.depth() == 1);
}

TEST_CASE("variance ties pick the lowest dimension") {
  // Both axes have the same spread.
  const Dataset d(2, {0.0, 0.0, 1.0, 1.0, 2.0, 2.0});
  const KdTree tree(d);
  CHECK(tree.nodes()[0].split_dim == 0);
}

TEST_CASE("duplicates go left at the median value") {
  const Dataset d(1, {5.0, 5.0, 5.0, 5.0});
  const KdTree tree(d);
  CHECK(tree.nodes().size() == 4);
  for (const auto& node : tree.nodes()) CHECK(node.right == KdTree::kNone);
  // Still exact: every other point is at distance 0.
  const KnnGraph g = knn_all(tree, 3);
  for (const auto& set : g.neighbors)
    for (const auto& nb : set.neighbors) CHECK(nb.distance == 0.0);
}

TEST_CASE("depth is logarithmic on uniform data") {
  const Dataset d = fixtures::uniform(1000, 3, 4);
  const KdTree tree(d);
  const auto bound = 2 * static_cast<std::size_t>(std::ceil(std::log2(1000.0))) + 1;
  CHECK(tree.depth() <= bound);
  CHECK(tree.nodes().size() == 1000);
}

TEST_CASE("tree dump lists every node") {
  const Dataset d = fixtures::uniform(9, 2, 1);
  std::ostringstream out;
  KdTree(d).dump(out);
  const std::string s = out.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 9);
}

TEST_CASE("k-NN matches brute force in 5-D") {
  check_against_brute(fixtures::random_blobs(500, 5, 77), 7);
}

TEST_CASE("k-NN matches brute force on random shapes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 1000)(rng);
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(20, n - 1))(rng);
    CAPTURE(n);
    CAPTURE(dim);
    CAPTURE(k);
    const Dataset d = trial % 2 ? fixtures::uniform(n, dim, rng()) : fixtures::random_blobs(n, dim, rng());
    check_against_brute(d, k);
  }
}

TEST_CASE("k-NN is exact on integer grids full of ties") {
  std::vector<double> v;
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      v.push_back(x);
      v.push_back(y);
    }
  const Dataset d(2, v);
  for (std::size_t k : {1u, 4u, 8u, 13u}) check_against_brute(d, k);
}

TEST_CASE("pruning never changes the answer") {
  const Dataset d = fixtures::random_blobs(300, 4, 8);
  const KdTree tree(d);
  KnnQueryOptions off;
  off.prune = false;
  std::size_t pruned_work = 0, full_work = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<SparseDistanceMatrix::Entry> a, b;
    const auto with = tree.knn(i, 6, a);
    const auto without = tree.knn(i, 6, b, off);
    REQUIRE(with == without);
    pruned_work += a.size();
    full_work += b.size();
  }
  CHECK(full_work == d.size() * (d.size() - 1));
  CHECK(pruned_work < full_work);
}

TEST_CASE("worker count does not change the graph or the counters") {
  const Dataset d = fixtures::random_blobs(700, 3, 12);
  const KdTree tree(d);
  const KnnGraph one = knn_all(tree, 5, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const KnnGraph many = knn_all(tree, 5, w);
    CHECK(many.neighbors == one.neighbors);
    CHECK(many.cache.evaluations() == one.cache.evaluations());
    CHECK(many.query_evaluations == one.query_evaluations);
    CHECK(many.cache.entries() == one.cache.entries());
  }
}

TEST_CASE("cache is symmetric and counts distinct pairs") {
  const Dataset d = fixtures::uniform(50, 2, 3);
  const KdTree tree(d);
  const KnnGraph g = knn_all(tree, 4);
  for (const auto& e : g.cache.entries()) {
    CHECK(e.i < e.j);
    CHECK(g.cache.find(e.j, e.i) == g.cache.find(e.i, e.j));
    CHECK(*g.cache.find(e.i, e.j) == euclidean(d.point(e.i), d.point(e.j)));
  }
  CHECK(g.cache.evaluations() == g.cache.size());
  CHECK(g.cache.evaluations() <= 50u * 49u / 2u);
  CHECK(g.query_evaluations >= g.cache.evaluations());
}

TEST_CASE("two points share a single cached distance") {
  const Dataset d(2, {0.0, 0.0, 3.0, 4.0});
  const KnnGraph g = knn_all(KdTree(d), 1);
  CHECK(g.cache.size() == 1);
  CHECK(g.cache.evaluations() == 1);
  CHECK(g.neighbors[0].neighbors[0].distance == 5.0);
  CHECK(g.neighbors[1].neighbors[0].index == 0);
}

TEST_CASE("k outside [1, n-1] is rejected") {
  CHECK_THROWS_AS(check_k(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(check_k(5, 5), std::invalid_argument);
  CHECK_NOTHROW(check_k(4, 5));
}
