#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetcheck/builtins.hpp"
#include "jetcheck/errors.hpp"
#include "jetcheck/feasibility.hpp"

using namespace jetcheck;

namespace {

// Independent exhaustive oracle: enumerate every window row by row as a
// composition of the row target and keep anything the validator accepts.
// Deliberately shares no search logic with search_rank_matrix.
bool brute_force_window_exists(int n1, int n2, int m, int p, int q, int r1,
                               int r2) {
  const int rows = q + 2, cols = p + q + 2;

  std::vector<std::vector<std::vector<int>>> row_choices(rows);
  for (int i = 0; i < rows; ++i) {
    int target = i == 0 ? n2 : m;
    std::vector<int> row(cols, 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (j == cols) {
        if (left == 0) row_choices[i].push_back(row);
        return;
      }
      bool banned = j > p + i || i > q + j;
      for (int v = 0; v <= (banned ? 0 : left); ++v) {
        row[j] = v;
        rec(j + 1, left - v);
      }
      row[j] = 0;
    };
    rec(0, target);
  }

  RankMatrix r;
  r.p = p;
  r.q = q;
  r.n1 = n1;
  r.n2 = n2;
  r.m = m;
  r.r1 = r1;
  r.r2 = r2;
  r.margin = 1;
  r.window.assign(rows, std::vector<int>(cols, 0));

  std::function<bool(int)> fill = [&](int i) -> bool {
    if (i == rows) return validate_rank_matrix(r).all_ok();
    for (const auto& row : row_choices[i]) {
      r.window[i] = row;
      if (fill(i + 1)) return true;
    }
    return false;
  };
  return fill(0);
}

}  // namespace

TEST_CASE("height report for the partial-prolongation profile") {
  HeightReport rep = check_height({7, 7, 3, 3, 2, 1, 1});
  CHECK(rep.delta == 1);
  CHECK(rep.lhs == 10);  // min{2+3+7, 1+2+7}
  CHECK(rep.rhs == 10);  // max{3+7, 2+7}
  CHECK(rep.admissible);
  CHECK(rep.equality);
}

TEST_CASE("vanishing heights follow the state-count balance for m = 2") {
  HeightReport rep = check_height({6, 2, 2, 0, 4, 1, 1});
  CHECK(rep.admissible);
  CHECK(rep.equality);  // 6 + 0 = 2 + 4

  HeightReport off = check_height({6, 2, 2, 0, 3, 0, 0});
  CHECK_FALSE(off.admissible);
}

TEST_CASE("the balance rules out mismatched positive heights for m = 2") {
  HeightReport rep = check_height({3, 3, 2, 1, 2, 1, 1});
  CHECK(rep.delta == 0);
  CHECK(rep.equality_case);
  CHECK_FALSE(rep.admissible);  // 3 + 1 != 3 + 2
}

TEST_CASE("height query invariants") {
  CHECK_THROWS_AS(check_height({3, 3, 1, 1, 1, 1, 1}), PreconditionError);
  CHECK_THROWS_AS(check_height({3, 3, 2, 1, 1, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(check_height({3, 3, 2, 1, 1, 2, 1}), PreconditionError);
  CHECK_THROWS_AS(check_height({-1, 3, 2, 1, 1, 1, 1}), PreconditionError);
  CHECK_NOTHROW(check_height({3, 3, 2, 1, 1, 1, 1}));
}

TEST_CASE("single-control systems admit only the static candidate") {
  for (int n = 1; n <= 8; ++n) {
    auto out = enumerate_heights(n, n, 1, 5, 5);
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == CandidateKind::Static);
    CHECK(out[0].p == 0);
    CHECK(out[0].q == 0);
  }
}

TEST_CASE("two controls on equal states admit exactly the diagonal heights") {
  auto out = enumerate_heights(3, 3, 2, 4, 4);
  std::vector<std::pair<int, int>> positive;
  bool has_static = false;
  for (const auto& c : out) {
    if (c.kind == CandidateKind::Static) has_static = true;
    if (c.kind == CandidateKind::Inequality) positive.push_back({c.p, c.q});
  }
  CHECK(has_static);
  CHECK(positive ==
        std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
}

TEST_CASE("three controls on seven states admit the (3, 2) profile") {
  auto out = enumerate_heights(7, 7, 3, 3, 3);
  bool found = false;
  for (const auto& c : out)
    if (c.p == 3 && c.q == 2 && c.r1 == 1 && c.r2 == 1) found = true;
  CHECK(found);
}

TEST_CASE("the flat-aircraft profile survives alone") {
  auto out = enumerate_heights(6, 2, 2, 4, 4);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == CandidateKind::Reduction);
  CHECK(out[0].p == 0);
  CHECK(out[0].q == 4);
}

TEST_CASE("enumeration is symmetric under swapping the systems") {
  for (auto [n1, n2, m] : {std::tuple{5, 3, 3}, {4, 4, 3}, {6, 2, 4}}) {
    auto a = enumerate_heights(n1, n2, m, 3, 3);
    auto b = enumerate_heights(n2, n1, m, 3, 3);
    REQUIRE(a.size() == b.size());
    auto key = [](const HeightCandidate& c) {
      return std::tuple{c.p, c.q, c.r1, c.r2};
    };
    std::vector<std::tuple<int, int, int, int>> lhs, rhs;
    for (const auto& c : a) lhs.push_back(key(c));
    for (const auto& c : b)
      rhs.push_back(std::tuple{c.q, c.p, c.r2, c.r1});
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("a witness window exists for the published profile") {
  auto witness = search_rank_matrix(7, 7, 3, 3, 2, 1, 1);
  REQUIRE(witness.has_value());
  CHECK(validate_rank_matrix(*witness).all_ok());

  // the published matrix itself satisfies every constraint
  RankMatrix published;
  published.p = 3;
  published.q = 2;
  published.n1 = published.n2 = 7;
  published.m = 3;
  published.r1 = published.r2 = 1;
  published.margin = 2;
  published.window = {
      {4, 1, 1, 1, 0, 0, 0, 0},
      {2, 0, 0, 0, 1, 0, 0, 0},
      {1, 1, 0, 0, 0, 1, 0, 0},
      {0, 1, 1, 0, 0, 0, 1, 0},
      {0, 0, 1, 1, 0, 0, 0, 1},
  };
  CHECK(validate_rank_matrix(published).all_ok());
}

TEST_CASE("the unbalanced two-control profile has no window") {
  CHECK_FALSE(search_rank_matrix(3, 3, 2, 1, 2, 1, 1).has_value());
  // confirmed by the independent exhaustive oracle
  CHECK_FALSE(brute_force_window_exists(3, 3, 2, 1, 2, 1, 1));
}

TEST_CASE("the diagonal two-control profile pins the corner entry") {
  auto witness = search_rank_matrix(3, 3, 2, 1, 1, 1, 1);
  REQUIRE(witness.has_value());
  CHECK(witness->window[0][0] == 2);  // row 0 must sum to n2 with r^0_1 = 1
  CHECK(brute_force_window_exists(3, 3, 2, 1, 1, 1, 1));
}

TEST_CASE("search agrees with the exhaustive oracle on small profiles") {
  for (int n1 = 2; n1 <= 4; ++n1) {
    for (int n2 = 2; n2 <= 4; ++n2) {
      for (int p = 1; p <= 2; ++p) {
        for (int q = 1; q <= 2; ++q) {
          bool search = search_rank_matrix(n1, n2, 2, p, q, 1, 1).has_value();
          bool brute = brute_force_window_exists(n1, n2, 2, p, q, 1, 1);
          CAPTURE(n1);
          CAPTURE(n2);
          CAPTURE(p);
          CAPTURE(q);
          CHECK(search == brute);
        }
      }
    }
  }
}

TEST_CASE("rejected heights never have witness windows") {
  // monotone exclusion over a seeded subsample of the grid
  std::mt19937_64 rng(314159);
  int rejected_checked = 0;
  for (int iter = 0; iter < 4000 && rejected_checked < 120; ++iter) {
    int n1 = 1 + static_cast<int>(rng() % 8);
    int n2 = 1 + static_cast<int>(rng() % 8);
    int m = 2 + static_cast<int>(rng() % 3);
    int p = 1 + static_cast<int>(rng() % 4);
    int q = 1 + static_cast<int>(rng() % 4);
    int r1 = 1 + static_cast<int>(rng() % (m - 1));
    int r2_cap = m - r1;
    int r2 = 1 + static_cast<int>(rng() % r2_cap);
    HeightReport rep = check_height({n1, n2, m, p, q, r1, r2});
    if (rep.admissible) continue;
    ++rejected_checked;
    CAPTURE(n1);
    CAPTURE(n2);
    CAPTURE(m);
    CAPTURE(p);
    CAPTURE(q);
    CAPTURE(r1);
    CAPTURE(r2);
    CHECK_FALSE(search_rank_matrix(n1, n2, m, p, q, r1, r2).has_value());
  }
  CHECK(rejected_checked >= 100);
}

TEST_CASE("geometry and combinatorics agree on the builtin pairs") {
  struct Profile {
    const char* name;
    int p, q;
  };
  for (const Profile& prof : std::initializer_list<Profile>{
           {"example47", 3, 2}, {"double-chain", 2, 2},
           {"double-chain-p3", 3, 3}}) {
    ProblemFile file = load_builtin(prof.name);
    RankMatrix r = rank_matrix(file.pair(prof.name), file.sampler);
    CHECK(validate_rank_matrix(r).all_ok());
    auto witness =
        search_rank_matrix(r.n1, r.n2, r.m, prof.p, prof.q, r.r1, r.r2);
    CHECK(witness.has_value());
  }
}

TEST_CASE("margins below the representable minimum are rejected") {
  CHECK_THROWS_AS(search_rank_matrix(3, 3, 2, 1, 1, 1, 1, 0),
                  PreconditionError);
  CHECK_THROWS_AS(search_rank_matrix(3, 3, 2, 0, 1, 1, 1),
                  PreconditionError);
}
