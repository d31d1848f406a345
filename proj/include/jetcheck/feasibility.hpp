#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetcheck/rankmatrix.hpp"

namespace jetcheck {

/// Candidate height profile between systems with n1, n2 states and m
/// controls: far ranks r1, r2 are required >= 1 with r1 + r2 <= m whenever
/// p, q > 0; they are ignored (conventionally 0) for heights touching 0.
struct HeightQuery {
  int n1{0}, n2{0}, m{1};
  int p{0}, q{0};
  int r1{0}, r2{0};

  void validate() const;  // throws PreconditionError on invariant violation
};

struct HeightReport {
  int delta{0};       // m - r1 - r2 (p, q > 0 only)
  long long lhs{0};   // min{(p-1)d + r1 p + n1, (q-1)d + r2 q + n2}
  long long rhs{0};   // max{r1 p + n1, r2 q + n2}
  bool admissible{false};
  bool equality{false};       // lhs == rhs
  bool equality_case{false};  // delta == 0, where admissibility forces
                              // n1 + r1 p == n2 + r2 q
};

/// Necessary-condition filter on a height profile. For p, q > 0 this is the
/// far-rank inequality; for p = q = 0 the static candidate needs n1 = n2;
/// for a single vanishing side the state-count balance n1 + p = n2 + q is
/// required when m = 2 (nothing is known to rule other cases out).
HeightReport check_height(const HeightQuery& query);

enum class CandidateKind {
  Static,     // (0, 0), possible only when n1 = n2
  Inequality, // p, q >= 1 with an admissible far-rank profile
  Reduction,  // p = 0 or q = 0 via the prolongation construction
};

struct HeightCandidate {
  int p{0}, q{0}, r1{0}, r2{0};
  CandidateKind kind{CandidateKind::Inequality};
  HeightReport report;
};

/// Every profile within the bounds that the necessary conditions do not rule
/// out. "Emitted" never means "realizable" -- only "not excluded".
std::vector<HeightCandidate> enumerate_heights(int n1, int n2, int m,
                                               int p_max, int q_max);

/// Backtracking search for an integer rank-matrix window with the given
/// parameters (stationary-shift tails, the band zero pattern, boundary
/// diagonals, row/column sums and the rank inequalities). Returns the first
/// witness found or nothing; "nothing" means the profile is excluded by the
/// necessary conditions.
std::optional<RankMatrix> search_rank_matrix(int n1, int n2, int m, int p,
                                             int q, int r1, int r2,
                                             int window_margin = 2);

}  // namespace jetcheck
