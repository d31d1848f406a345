#pragma once

#include <string>
#include <vector>

#include "jetcheck/equivmap.hpp"

namespace jetcheck {

enum class Direction { Forward, Backward };  // forward: A-family along phi

/// Truncated family of coefficient matrices expressing the pulled-back
/// contact forms of the target in the source coframe: block (k, j) holds the
/// coefficients of the level-j source forms in the pullback of the level-k
/// target forms. Blocks with j > base_order + k vanish identically and are
/// not stored (upper-triangular band).
class BlockFamily {
 public:
  BlockFamily(Direction dir, int base_order, int truncation)
      : direction_(dir), base_order_(base_order), truncation_(truncation) {}

  Direction direction() const { return direction_; }
  int base_order() const { return base_order_; }
  int truncation() const { return truncation_; }

  const ExprMatrix& block(int k, int j) const;
  ExprMatrix& block(int k, int j);
  bool in_band(int k, int j) const {
    return k >= 0 && k <= truncation_ && j >= 0 && j <= base_order_ + k;
  }

  /// The stationary far block A^1_{p+1} (or B^1_{q+1}).
  const ExprMatrix& infinity_candidate() const { return block(1, base_order_ + 1); }

 private:
  Direction direction_;
  int base_order_;
  int truncation_;
  std::vector<std::vector<ExprMatrix>> rows_;  // rows_[k][j]
  friend BlockFamily compute_blocks(const EquivalencePair&, Direction, int,
                                    const Sampler&);
};

/// Expands the pullback of each target contact level along the induced
/// prolongation of the pair's map in the given direction and reads off the
/// coefficient blocks. The dt-direction residual of every level-0 pullback
/// must vanish identically (contact preservation); a nonzero residual throws
/// InvariantViolationError.
BlockFamily compute_blocks(const EquivalencePair& pair, Direction dir,
                           int truncation, const Sampler& s);

struct FarBlockData {
  ExprMatrix a_inf;
  ExprMatrix b_inf;
  int r1{0};
  int r2{0};
};

/// Asserts stationarity of the far diagonal blocks (entrywise, exactly), the
/// rank equalities rank(A^0_p) = rank(A_inf) and rank(B^0_q) = rank(B_inf),
/// that the far blocks are nonzero, the bound 2 <= r1 + r2 <= m, and that
/// A_inf * B_inf vanishes at matched sample points. Requires p, q > 0; the
/// properties need not hold otherwise.
FarBlockData check_far_blocks(const EquivalencePair& pair,
                              const BlockFamily& forward,
                              const BlockFamily& backward, const Sampler& s);

}  // namespace jetcheck
