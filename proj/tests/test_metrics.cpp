#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "sktdpc/metrics.hpp"

using namespace sktdpc::metrics;

namespace {

using Labels = std::vector<int>;

Labels random_labels(std::mt19937_64& rng, std::size_t n, int classes) {
  std::uniform_int_distribution<int> u(0, classes - 1);
  Labels out(n);
  for (int& x : out) x = u(rng);
  return out;
}

Labels permute(const Labels& l, const std::vector<int>& map) {
  Labels out;
  for (int x : l) out.push_back(map[static_cast<std::size_t>(x)]);
  return out;
}

// Best matched count by trying every assignment of rows to columns.
std::int64_t exhaustive_match(const ContingencyTable& t) {
  std::vector<std::size_t> cols(std::max(t.rows, t.cols));
  std::iota(cols.begin(), cols.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t sum = 0;
    for (std::size_t r = 0; r < t.rows; ++r)
      if (cols[r] < t.cols) sum += t(r, cols[r]);
    best = std::max(best, sum);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

}  // namespace

TEST_CASE("contingency counts") {
  const ContingencyTable a = contingency(Labels{0, 0, 1, 1}, Labels{1, 1, 0, 0});
  // Rows and columns follow first appearance.
  CHECK(a.counts == std::vector<std::int64_t>{2, 0, 0, 2});
  const ContingencyTable b = contingency(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1});
  CHECK(b.counts == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(b.total == 4);
  CHECK(b.row_sums == std::vector<std::int64_t>{2, 2});
  CHECK_THROWS_AS(contingency(Labels{0, 1}, Labels{0}), std::invalid_argument);
  CHECK_THROWS_AS(contingency(Labels{}, Labels{}), std::invalid_argument);
}

TEST_CASE("accuracy by optimal matching") {
  const auto t = ContingencyTable::from_counts(2, 2, {2, 1, 1, 2});
  CHECK(acc(t) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(acc(contingency(Labels{0, 0, 1, 1, 2}, Labels{5, 5, 7, 7, 9})) == 1.0);
  // More clusters than classes: unmatched clusters score nothing.
  CHECK(acc(contingency(Labels{0, 0, 0, 1}, Labels{0, 1, 2, 3})) == doctest::Approx(0.5));
}

TEST_CASE("assignment solver agrees with exhaustive search") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    std::vector<std::int64_t> counts(rows * cols);
    for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 9);
    counts[0] += 1;
    const auto t = ContingencyTable::from_counts(rows, cols, counts);
    CHECK(acc(t) * double(t.total) == doctest::Approx(double(exhaustive_match(t))));
  }
}

TEST_CASE("ARI hand example") {
  CHECK(ari(contingency(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1})) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("identical partitions score one everywhere") {
  const Labels l = {0, 0, 1, 2, 2, 2, 3};
  const Scores s = score_all(l, permute(l, {3, 0, 2, 1}));
  CHECK(s.acc == 1.0);
  CHECK(s.ari == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.nmi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.ami == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.fmi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single cluster on both sides is degenerate but identical") {
  const Scores s = score_all(Labels{0, 0, 0}, Labels{4, 4, 4});
  CHECK(s.ari == 1.0);
  CHECK(s.nmi == 1.0);
  CHECK(s.ami == 1.0);
  CHECK(s.fmi == 1.0);
  const Scores d = score_all(Labels{0, 0, 0}, Labels{0, 1, 2});
  CHECK(d.nmi == 0.0);
  CHECK(d.fmi == 0.0);
}

TEST_CASE("values agree with an external implementation") {
  struct Case {
    Labels truth, pred;
    double ari, nmi, ami, fmi;
  };
  // Reference values from scikit-learn (NMI geometric, AMI arithmetic).
  const std::vector<Case> cases = {
      {{0, 0, 0, 1, 1, 1, 2, 2, 2, 2},
       {0, 0, 1, 1, 1, 2, 2, 2, 0, 0},
       0.09090909090909091, 0.3946483716358942, 0.17152423540072848, 0.3333333333333333},
      {{3, 2, 2, 3, 2, 3, 3, 0, 0, 1, 1, 3, 3, 0, 1, 3, 0, 3, 0, 1,
        3, 1, 1, 1, 2, 1, 3, 1, 1, 2, 2, 2, 2, 3, 3, 3, 2, 2, 1, 3},
       {1, 0, 2, 0, 2, 1, 0, 0, 1, 0, 0, 1, 2, 1, 2, 2, 2, 1, 1, 1,
        0, 1, 1, 0, 2, 0, 0, 0, 2, 2, 2, 0, 2, 1, 1, 0, 1, 2, 1, 0},
       0.05661733007616037, 0.11632129015248532, 0.04836014557903757, 0.32696328719470397},
      {{0, 0, 1, 1, 2, 2, 3, 3},
       {0, 0, 0, 0, 1, 1, 1, 1},
       0.36363636363636365, 0.7071067811865478, 0.5333333333333341, 0.5773502691896257},
  };
  for (const auto& c : cases) {
    const ContingencyTable t = contingency(c.truth, c.pred);
    CHECK(ari(t) == doctest::Approx(c.ari).epsilon(1e-10));
    CHECK(nmi(t) == doctest::Approx(c.nmi).epsilon(1e-10));
    CHECK(ami(t) == doctest::Approx(c.ami).epsilon(1e-10));
    CHECK(fmi(t) == doctest::Approx(c.fmi).epsilon(1e-10));
  }
}

TEST_CASE("relabeling and symmetry") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    const Labels t = random_labels(rng, n, 1 + int(rng() % 5));
    const Labels p = random_labels(rng, n, 1 + int(rng() % 5));
    std::vector<int> map = {0, 1, 2, 3, 4};
    std::shuffle(map.begin(), map.end(), rng);
    const Scores base = score_all(t, p);
    const Scores moved = score_all(permute(t, map), p);
    const Scores swapped = score_all(p, t);
    CHECK(moved.acc == doctest::Approx(base.acc).epsilon(1e-12));
    CHECK(moved.ari == doctest::Approx(base.ari).epsilon(1e-12));
    CHECK(moved.nmi == doctest::Approx(base.nmi).epsilon(1e-12));
    CHECK(moved.ami == doctest::Approx(base.ami).epsilon(1e-12));
    CHECK(moved.fmi == doctest::Approx(base.fmi).epsilon(1e-12));
    CHECK(swapped.ari == doctest::Approx(base.ari).epsilon(1e-12));
    CHECK(swapped.nmi == doctest::Approx(base.nmi).epsilon(1e-12));
    CHECK(swapped.ami == doctest::Approx(base.ami).epsilon(1e-12));
    CHECK(swapped.fmi == doctest::Approx(base.fmi).epsilon(1e-12));
    CHECK(base.ami <= base.nmi + 1e-9);
    CHECK(base.acc >= 0.0);
    CHECK(base.acc <= 1.0);
    CHECK(base.nmi >= 0.0);
    CHECK(base.nmi <= 1.0);
    CHECK(base.fmi <= 1.0);
    CHECK(base.ari <= 1.0);
  }
}
