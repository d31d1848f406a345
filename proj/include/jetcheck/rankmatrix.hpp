#pragma once

#include <string>
#include <vector>

#include "jetcheck/blockmat.hpp"

namespace jetcheck {

/// d[i][j] = dim( span of the pulled-back target levels 0..i  intersected
/// with the coordinate span of source coframe levels 0..j ), at generic
/// points. d is aggregated over samples by the max rule; `consistent` is
/// false when samples disagreed (a non-generic locus warning).
struct FiltrationDims {
  int i_max{0}, j_max{0};
  std::vector<std::vector<int>> d;
  bool consistent{true};

  int at(int i, int j) const {
    if (i < 0 || j < 0) return 0;
    return d[i][j];
  }
};

FiltrationDims filtration_dims(const EquivalencePair& pair,
                               const BlockFamily& forward, int i_max,
                               int j_max, const Sampler& s);

/// The blockwise-rank invariant of an equivalence: a finite window of the
/// ranks r^i_j together with the height, dimensions, and far ranks. Entries
/// outside the window follow the band zero pattern and the diagonal shift
/// recurrence r^i_j = r^{i-1}_{j-1}.
struct RankMatrix {
  int p{0}, q{0};
  int n1{0}, n2{0}, m{0};
  int r1{0}, r2{0};
  int margin{2};
  std::vector<std::vector<int>> window;  // rows 0..q+margin, cols 0..p+q+margin
  bool stationary_tails{true};
  bool samples_consistent{true};

  int rows() const { return q + margin + 1; }
  int cols() const { return p + q + margin + 1; }

  /// r^i_j extended beyond the window by the zero pattern and shift rule.
  int at(int i, int j) const;
};

/// Per-constraint validation verdicts for a rank matrix (usable on
/// hand-entered windows as well as computed ones).
struct RankValidation {
  struct Item {
    std::string constraint;
    bool ok;
    std::string detail;
    bool stationarity;  // tail-shape items are reported, not hard failures
  };
  std::vector<Item> items;

  bool all_ok() const {
    for (const auto& it : items)
      if (!it.ok) return false;
    return true;
  }
  bool core_ok() const {
    for (const auto& it : items)
      if (!it.ok && !it.stationarity) return false;
    return true;
  }
};

RankValidation validate_rank_matrix(const RankMatrix& r);

/// Computes the rank matrix of a verified pair directly from filtration
/// dimensions by inclusion-exclusion, asserts its invariants, and returns
/// it. Requires effective heights p, q > 0.
RankMatrix rank_matrix(const EquivalencePair& pair, const Sampler& s,
                       int margin = 2);

}  // namespace jetcheck
