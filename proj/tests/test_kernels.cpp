#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>

#include "jetcheck/errors.hpp"
#include "jetcheck/exprmatrix.hpp"
#include "jetcheck/kernels.hpp"

using namespace jetcheck;

TEST_CASE("parallel index loop covers every index exactly once") {
  const int n = 500;
  std::vector<std::atomic<int>> hits(n);
  kernels::for_each_index(n, [&](int i) { hits[i].fetch_add(1); });
  for (int i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("exceptions from parallel bodies are rethrown") {
  CHECK_THROWS_AS(kernels::for_each_index(64,
                                          [&](int i) {
                                            if (i == 13)
                                              throw Error("boom");
                                          }),
                  Error);
}

TEST_CASE("rank sweeps agree between serial and parallel") {
  std::mt19937_64 rng(11);
  auto matrix_at = [&](int t) {
    // deterministic per-index matrices with varying rank
    std::mt19937_64 local(1000 + t);
    int rank = 1 + static_cast<int>(local() % 4);
    Eigen::MatrixXd a(5, rank), b(rank, 6);
    for (int i = 0; i < a.size(); ++i)
      a.data()[i] = static_cast<double>(local() % 1000) / 999.0 - 0.5;
    for (int i = 0; i < b.size(); ++i)
      b.data()[i] = static_cast<double>(local() % 1000) / 999.0 - 0.5;
    return Eigen::MatrixXd(a * b);
  };
  auto serial = kernels::sample_ranks_serial(matrix_at, 64);
  auto parallel = kernels::sample_ranks(matrix_at, 64);
  CHECK(serial == parallel);
  for (int t = 0; t < 64; ++t) CHECK(serial[t] >= 1);
}

TEST_CASE("singular draws are recorded as skipped in both variants") {
  auto matrix_at = [](int t) -> Eigen::MatrixXd {
    if (t % 3 == 0) throw SingularPointError("singular");
    return Eigen::MatrixXd::Identity(2, 2);
  };
  auto serial = kernels::sample_ranks_serial(matrix_at, 9);
  auto parallel = kernels::sample_ranks(matrix_at, 9);
  CHECK(serial == parallel);
  CHECK(serial[0] == -1);
  CHECK(serial[1] == 2);
}

TEST_CASE("intersection grids agree between serial and parallel") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 5; ++rep) {
    int li = 2 + static_cast<int>(rng() % 4);
    int lj = 2 + static_cast<int>(rng() % 5);
    int block = 1 + static_cast<int>(rng() % 3);
    std::vector<int> rows{0}, cols{0};
    for (int i = 0; i < li; ++i) rows.push_back(rows.back() + block);
    for (int j = 0; j < lj; ++j) cols.push_back(cols.back() + block);
    Eigen::MatrixXd stacked(rows.back(), cols.back());
    for (int i = 0; i < stacked.size(); ++i)
      stacked.data()[i] = static_cast<double>(rng() % 2001) / 1000.0 - 1.0;
    auto serial = kernels::intersection_dims_serial(stacked, rows, cols);
    auto parallel = kernels::intersection_dims(stacked, rows, cols);
    CHECK(serial == parallel);
  }
}

TEST_CASE("intersection dimensions are monotone in both indices") {
  std::mt19937_64 rng(31);
  std::vector<int> rows{0, 2, 4, 6}, cols{0, 3, 6, 9};
  Eigen::MatrixXd stacked(6, 9);
  for (int i = 0; i < stacked.size(); ++i)
    stacked.data()[i] = static_cast<double>(rng() % 2001) / 1000.0 - 1.0;
  auto d = kernels::intersection_dims(stacked, rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d[i].size(); ++j) {
      if (i) CHECK(d[i][j] >= d[i - 1][j]);
      if (j) CHECK(d[i][j] >= d[i][j - 1]);
    }
}

TEST_CASE("intersection of a known configuration") {
  // rows span {e0, e1} and {e0, e1, e2 + e3}; columns are the coordinate
  // prefixes of sizes 2 and 4
  std::vector<int> rows{0, 2, 3}, cols{0, 2, 4};
  Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(3, 4);
  stacked(0, 0) = 1;
  stacked(1, 1) = 1;
  stacked(2, 2) = 1;
  stacked(2, 3) = 1;
  auto d = kernels::intersection_dims(stacked, rows, cols);
  CHECK(d[0][0] == 2);
  CHECK(d[0][1] == 2);
  CHECK(d[1][0] == 2);
  CHECK(d[1][1] == 3);
}
