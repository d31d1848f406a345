#include "jetcheck/blockmat.hpp"

#include <cmath>

#include "jetcheck/errors.hpp"

namespace jetcheck {

const ExprMatrix& BlockFamily::block(int k, int j) const {
  if (!in_band(k, j))
    throw Error("block (" + std::to_string(k) + ", " + std::to_string(j) +
                ") is outside the stored band");
  return rows_[k][j];
}

ExprMatrix& BlockFamily::block(int k, int j) {
  if (!in_band(k, j))
    throw Error("block (" + std::to_string(k) + ", " + std::to_string(j) +
                ") is outside the stored band");
  return rows_[k][j];
}

BlockFamily compute_blocks(const EquivalencePair& pair, Direction dir,
                           int truncation, const Sampler& s) {
  const EquivalenceMap& map = dir == Direction::Forward ? pair.phi : pair.psi;
  const ControlSystem& source = *map.source;
  const ControlSystem& target = *map.target;
  const int base = map.declared_order;

  BlockFamily family(dir, base, truncation);
  ProlongedMap lift = prolong_map(map, truncation);

  // Level-0 residuals: D_t(component) - g o (components). These are exactly
  // the dt-direction coefficients left after eliminating dt through the
  // source contact relations.
  {
    std::unordered_map<Variable, Expr, VariableHash> subs;
    for (int i = 0; i < target.n(); ++i)
      subs[target.states()[i]] = map.state_components[i];
    for (int a = 0; a < target.m(); ++a)
      subs[target.controls()[a]] = map.control_components[a];
    for (int i = 0; i < target.n(); ++i) {
      Expr residual = source.total_derivative(map.state_components[i]) -
                      substitute(target.dynamics()[i], subs);
      if (!is_identically_zero(residual, s))
        throw InvariantViolationError(
            "nonzero dt residual while expanding the pullback of " +
            target.states()[i].str() +
            ": contact preservation fails upstream");
    }
  }

  family.rows_.resize(truncation + 1);
  for (int k = 0; k <= truncation; ++k) {
    const std::vector<Expr>& comps = lift.level_components(k);
    family.rows_[k].resize(base + k + 1);
    for (int j = 0; j <= base + k; ++j) {
      std::vector<Variable> cols = source.level_coordinates(j);
      ExprMatrix blockkj(static_cast<int>(comps.size()),
                         static_cast<int>(cols.size()));
      for (std::size_t r = 0; r < comps.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          blockkj.at(static_cast<int>(r), static_cast<int>(c)) =
              differentiate(comps[r], cols[c]);
      family.rows_[k][j] = std::move(blockkj);
    }
  }
  return family;
}

namespace {

std::string block_name(Direction dir, int k, int j) {
  return std::string(dir == Direction::Forward ? "A" : "B") + "^" +
         std::to_string(k) + "_" + std::to_string(j);
}

// entrywise stationarity of the far diagonal: family.block(k, base+k) equals
// the candidate for every k in 1..K
void assert_stationary(const BlockFamily& family, const Sampler& s) {
  const ExprMatrix& inf = family.infinity_candidate();
  for (int k = 2; k <= family.truncation(); ++k) {
    const ExprMatrix& blk = family.block(k, family.base_order() + k);
    for (int r = 0; r < inf.rows(); ++r) {
      for (int c = 0; c < inf.cols(); ++c) {
        if (!is_identically_zero(blk.at(r, c) - inf.at(r, c), s))
          throw InvariantViolationError(
              "stationarity violation: " +
              block_name(family.direction(), k, family.base_order() + k) +
              " differs from " +
              block_name(family.direction(), 1, family.base_order() + 1) +
              " at entry (" + std::to_string(r) + ", " + std::to_string(c) +
              ")");
      }
    }
  }
}

}  // namespace

FarBlockData check_far_blocks(const EquivalencePair& pair,
                              const BlockFamily& forward,
                              const BlockFamily& backward, const Sampler& s) {
  const int p = forward.base_order();
  const int q = backward.base_order();
  if (p <= 0 || q <= 0)
    throw PreconditionError(
        "the far-diagonal properties apply only to heights with p, q > 0");

  assert_stationary(forward, s);
  assert_stationary(backward, s);

  FarBlockData data;
  data.a_inf = forward.infinity_candidate();
  data.b_inf = backward.infinity_candidate();
  data.r1 = generic_rank(data.a_inf, s);
  data.r2 = generic_rank(data.b_inf, s);

  if (data.r1 == 0 || data.r2 == 0)
    throw InvariantViolationError("far blocks must be nonzero: rank(A_inf) = " +
                                  std::to_string(data.r1) +
                                  ", rank(B_inf) = " + std::to_string(data.r2));

  int rank_a0p = generic_rank(forward.block(0, p), s);
  if (rank_a0p != data.r1)
    throw InvariantViolationError(
        "rank equality violation: rank(A^0_" + std::to_string(p) + ") = " +
        std::to_string(rank_a0p) + " != rank(A_inf) = " +
        std::to_string(data.r1));
  int rank_b0q = generic_rank(backward.block(0, q), s);
  if (rank_b0q != data.r2)
    throw InvariantViolationError(
        "rank equality violation: rank(B^0_" + std::to_string(q) + ") = " +
        std::to_string(rank_b0q) + " != rank(B_inf) = " +
        std::to_string(data.r2));

  const int m = pair.phi.source->m();
  if (data.r1 + data.r2 < 2 || data.r1 + data.r2 > m)
    throw InvariantViolationError(
        "rank bound violation: need 2 <= r1 + r2 <= m, got r1 = " +
        std::to_string(data.r1) + ", r2 = " + std::to_string(data.r2) +
        ", m = " + std::to_string(m));

  // A_inf * B_inf = 0 at matched points (B evaluated at the mapped point)
  {
    ProlongedMap lift = prolong_map(pair.phi, q + 2);
    std::vector<Variable> coords =
        pair.phi.source->coordinates(pair.phi.declared_order + q + 2);
    std::vector<Variable> avars = data.a_inf.variables();
    coords.insert(coords.end(), avars.begin(), avars.end());
    for (int t = 0; t < s.trials; ++t) {
      for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
        try {
          Point pt = s.sample(coords, t, attempt);
          Eigen::MatrixXd a = data.a_inf.evaluate_at(pt);
          Eigen::MatrixXd b = data.b_inf.evaluate_at(lift.image_point(pt));
          double err = (a * b).cwiseAbs().maxCoeff();
          if (err > 1e-6)
            throw InvariantViolationError(
                "A_inf * B_inf does not vanish at a generic point (|.|max = " +
                std::to_string(err) + ")");
          break;
        } catch (const SingularPointError&) {
          continue;
        }
      }
    }
  }
  return data;
}

}  // namespace jetcheck
