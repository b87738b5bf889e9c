#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "sktdpc/dataset.hpp"
#include "sktdpc/distance_cache.hpp"
#include "sktdpc/jacobi.hpp"
#include "sktdpc/registry.hpp"

using namespace sktdpc;

namespace {

Dataset parse_text(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return parse(in, options, "t");
}

}  // namespace

TEST_CASE("parse reads comma and whitespace rows") {
  const Dataset a = parse_text("1.0,2.0\n3.5,-4\n");
  CHECK(a.size() == 2);
  CHECK(a.dim() == 2);
  CHECK(a.at(1, 0) == 3.5);
  CHECK(a.at(1, 1) == -4.0);
  CHECK_FALSE(a.has_labels());

  const Dataset b = parse_text("1 2\t3\n\n4 5 6\n");
  CHECK(b.size() == 2);
  CHECK(b.dim() == 3);
  CHECK(b.at(1, 2) == 6.0);
}

TEST_CASE("single row parses to one point") {
  const Dataset d = parse_text("7,8,9\n");
  CHECK(d.size() == 1);
  CHECK(d.dim() == 3);
}

TEST_CASE("non-numeric field reports its line") {
  try {
    parse_text("1.0,abc\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    parse_text("1,2\n3,4\n5,x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("ragged rows are rejected") {
  CHECK_THROWS_AS(parse_text("1,2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_text(""), ParseError);
}

TEST_CASE("label column maps tokens to dense ids") {
  LoadOptions o;
  o.label_column = -1;
  const Dataset d = parse_text("1,2,b\n3,4,a\n5,6,b\n", o);
  REQUIRE(d.has_labels());
  CHECK(d.dim() == 2);
  CHECK(d.labels() == std::vector<int>{0, 1, 0});
  CHECK(d.label_names() == std::vector<std::string>{"b", "a"});
  CHECK(d.label_count() == 2);

  o.label_column = 0;
  const Dataset first = parse_text("7,1,2\n8,3,4\n", o);
  CHECK(first.dim() == 2);
  CHECK(first.at(0, 0) == 1.0);
  CHECK(first.label_names() == std::vector<std::string>{"7", "8"});
}

TEST_CASE("header row is skipped when asked") {
  LoadOptions o;
  o.has_header = true;
  const Dataset d = parse_text("x,y\n1,2\n", o);
  CHECK(d.size() == 1);
}

TEST_CASE("missing file throws InputNotFound naming the path") {
  try {
    load("/nonexistent/points.csv");
    FAIL("expected InputNotFound");
  } catch (const InputNotFound& e) {
    CHECK(std::string(e.what()).find("/nonexistent/points.csv") != std::string::npos);
  }
}

TEST_CASE("save then load round-trips values and labels exactly") {
  Dataset d = fixtures::random_blobs(60, 3, 11);
  const auto path = std::filesystem::temp_directory_path() / "sktdpc_roundtrip.csv";
  save(path, d);
  LoadOptions o;
  o.label_column = -1;
  Dataset back = load(path, o);
  std::filesystem::remove(path);
  CHECK(back.values().size() == d.values().size());
  CHECK(std::equal(back.values().begin(), back.values().end(), d.values().begin()));
  // Tokens come back as written; ids follow first occurrence, so compare the
  // partition through the names.
  for (std::size_t i = 0; i < d.size(); ++i)
    CHECK(std::stoi(back.label_names()[back.labels()[i]]) == d.labels()[i]);
}

TEST_CASE("min-max normalization") {
  const Dataset d(1, {0.0, 5.0, 10.0});
  const Dataset n = normalize(d, Normalization::kMinMax);
  CHECK(n.at(0, 0) == 0.0);
  CHECK(n.at(1, 0) == 0.5);
  CHECK(n.at(2, 0) == 1.0);

  const Dataset flat(2, {3.0, 1.0, 3.0, 2.0});
  const Dataset f = normalize(flat, Normalization::kMinMax);
  CHECK(f.at(0, 0) == 0.0);
  CHECK(f.at(1, 0) == 0.0);
  CHECK(f.at(1, 1) == 1.0);

  const Dataset same = normalize(flat, Normalization::kNone);
  CHECK(same == flat);
}

TEST_CASE("jacobi eigen-decomposition of a known matrix") {
  // [[2,1],[1,2]] has eigenvalues 3 and 1.
  const SymmetricEigen e = jacobi_eigen({2.0, 1.0, 1.0, 2.0}, 2);
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(e.vectors[0]) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("pca to full dimension preserves pairwise distances") {
  const Dataset d = fixtures::random_blobs(80, 4, 5);
  const Dataset p = pca_reduce(d, 4);
  for (std::size_t i = 0; i < d.size(); i += 7)
    for (std::size_t j = 0; j < d.size(); j += 5)
      CHECK(euclidean(p.point(i), p.point(j)) ==
            doctest::Approx(euclidean(d.point(i), d.point(j))).epsilon(1e-9));
}

TEST_CASE("pca of points on y = 2x has one informative axis") {
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) {
    v.push_back(i);
    v.push_back(2.0 * i);
  }
  const Dataset d(2, v);
  const Dataset p = pca_reduce(d, 1);
  REQUIRE(p.dim() == 1);
  // Distances along the line are kept exactly by the single component.
  CHECK(std::abs(p.at(9, 0) - p.at(0, 0)) == doctest::Approx(9.0 * std::sqrt(5.0)));
  const Dataset full = pca_reduce(d, 2);
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(full.at(i, 1)) < 1e-9);
}

TEST_CASE("pca eigenvalues agree with Eigen") {
  const Dataset d = fixtures::random_blobs(120, 5, 21);
  const std::size_t n = d.size(), k = d.dim();
  Eigen::MatrixXd x(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < k; ++h) x(i, h) = d.at(i, h);
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / double(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);

  std::vector<double> m(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) m[a * k + b] = cov(a, b);
  const SymmetricEigen e = jacobi_eigen(m, k);
  for (std::size_t c = 0; c < k; ++c)
    CHECK(e.values[c] == doctest::Approx(solver.eigenvalues()(k - 1 - c)).epsilon(1e-10));

  // Projected variance along each axis equals the eigenvalue.
  const Dataset p = pca_reduce(d, 2);
  for (std::size_t c = 0; c < 2; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p.at(i, c) * p.at(i, c);
    CHECK(s / double(n - 1) == doctest::Approx(e.values[c]).epsilon(1e-9));
  }
}

TEST_CASE("blob generator is deterministic per seed") {
  BlobSpec spec;
  spec.centers = {{0.0, 0.0}, {5.0, 5.0}};
  spec.spread = {1.0};
  spec.points_per_cluster = 20;
  spec.seed = 9;
  const Dataset a = generate_gaussian_blobs(spec);
  const Dataset b = generate_gaussian_blobs(spec);
  CHECK(a == b);
  CHECK(a.size() == 40);
  CHECK(a.label_count() == 2);
  spec.seed = 10;
  CHECK_FALSE(generate_gaussian_blobs(spec) == a);
}

TEST_CASE("fixtures have the documented shapes") {
  const Dataset ss2 = fixtures::ss2_like();
  CHECK(ss2.size() == 300);
  CHECK(ss2.label_count() == 2);
  const Dataset s1 = fixtures::s1_like();
  CHECK(s1.size() == 5000);
  CHECK(s1.dim() == 2);
  CHECK(s1.label_count() == 15);
}

TEST_CASE("bundled datasets load with the registered shape") {
  const auto dir = default_data_dir();
  for (const char* name : {"iris", "wine"}) {
    CAPTURE(name);
    const Dataset d = load_registered(name, dir);
    CHECK(d.size() == find_dataset(name)->points);
  }
}
