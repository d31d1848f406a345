#include "jetcheck/rankmatrix.hpp"

#include <algorithm>
#include <sstream>

#include "jetcheck/errors.hpp"
#include "jetcheck/kernels.hpp"

namespace jetcheck {

FiltrationDims filtration_dims(const EquivalencePair& pair,
                               const BlockFamily& forward, int i_max,
                               int j_max, const Sampler& s) {
  const EquivalenceMap& phi = pair.phi;
  const ControlSystem& source = *phi.source;
  const ControlSystem& target = *phi.target;
  const int p = forward.base_order();
  if (j_max < p + i_max)
    throw PreconditionError(
        "filtration window too small: need j_max >= p + i_max");
  if (forward.truncation() < i_max)
    throw PreconditionError("block family truncated below i_max");

  // stacked coefficient matrix: rows grouped by target level, columns by
  // source level
  std::vector<int> row_offsets{0}, col_offsets{0};
  for (int i = 0; i <= i_max; ++i)
    row_offsets.push_back(row_offsets.back() + target.level_size(i));
  for (int j = 0; j <= j_max; ++j)
    col_offsets.push_back(col_offsets.back() + source.level_size(j));

  ExprMatrix stacked(row_offsets.back(), col_offsets.back());
  for (int i = 0; i <= i_max; ++i) {
    for (int j = 0; j <= std::min(p + i, j_max); ++j) {
      const ExprMatrix& blk = forward.block(i, j);
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c)
          stacked.at(row_offsets[i] + r, col_offsets[j] + c) = blk.at(r, c);
    }
  }

  std::vector<Variable> vars = stacked.variables();
  std::vector<std::vector<std::vector<int>>> per_sample(s.trials);
  std::vector<char> valid(s.trials, 0);
  kernels::for_each_index(s.trials, [&](int t) {
    for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
      try {
        Point pt = s.sample(vars, t, attempt);
        Eigen::MatrixXd num = stacked.evaluate_at(pt);
        per_sample[t] =
            kernels::intersection_dims_serial(num, row_offsets, col_offsets);
        valid[t] = 1;
        return;
      } catch (const SingularPointError&) {
        continue;
      }
    }
  });

  FiltrationDims out;
  out.i_max = i_max;
  out.j_max = j_max;
  out.d.assign(i_max + 1, std::vector<int>(j_max + 1, -1));
  int used = 0;
  for (int t = 0; t < s.trials; ++t) {
    if (!valid[t]) continue;
    ++used;
    for (int i = 0; i <= i_max; ++i)
      for (int j = 0; j <= j_max; ++j) {
        if (out.d[i][j] >= 0 && out.d[i][j] != per_sample[t][i][j])
          out.consistent = false;
        out.d[i][j] = std::max(out.d[i][j], per_sample[t][i][j]);
      }
  }
  if (used == 0)
    throw DegenerateSamplingError(
        "degenerate sampling: no filtration sample could be evaluated");
  return out;
}

int RankMatrix::at(int i, int j) const {
  if (i < 0 || j < 0) return 0;
  if (j > p + i || i > q + j) return 0;
  if (i < rows() && j < cols()) return window[i][j];
  return at(i - 1, j - 1);
}

namespace {

std::string cell(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void push(RankValidation& v, std::string constraint, bool ok,
          std::string detail = "", bool stationarity = false) {
  v.items.push_back({std::move(constraint), ok, std::move(detail), stationarity});
}

}  // namespace

RankValidation validate_rank_matrix(const RankMatrix& r) {
  if (static_cast<int>(r.window.size()) != r.rows())
    throw Error("rank-matrix window has " + std::to_string(r.window.size()) +
                " rows, expected " + std::to_string(r.rows()));
  for (const auto& row : r.window)
    if (static_cast<int>(row.size()) != r.cols())
      throw Error("rank-matrix window row has " + std::to_string(row.size()) +
                  " columns, expected " + std::to_string(r.cols()));

  RankValidation v;

  bool diag_positive = r.r1 >= 1 && r.r2 >= 1;
  push(v, "far-ranks-positive", diag_positive,
       "r1 = " + std::to_string(r.r1) + ", r2 = " + std::to_string(r.r2));
  push(v, "rank-sum-bound", r.r1 + r.r2 >= 2 && r.r1 + r.r2 <= r.m,
       "2 <= r1 + r2 <= m with r1 + r2 = " + std::to_string(r.r1 + r.r2) +
           ", m = " + std::to_string(r.m));

  bool zero_ok = true;
  std::string zero_detail;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if ((j > r.p + i || i > r.q + j) && r.window[i][j] != 0 && zero_ok) {
        zero_ok = false;
        zero_detail = "nonzero entry outside the band at " + cell(i, j);
      }
  push(v, "zero-pattern", zero_ok, zero_detail);

  for (int k = 0; k + 0 < r.rows() && r.p + k < r.cols(); ++k)
    push(v, "diagonal-A at " + cell(k, r.p + k), r.window[k][r.p + k] == r.r1,
         "expected r1 = " + std::to_string(r.r1) + ", got " +
             std::to_string(r.window[k][r.p + k]));
  for (int k = 0; r.q + k < r.rows() && k < r.cols(); ++k)
    push(v, "diagonal-B at " + cell(r.q + k, k), r.window[r.q + k][k] == r.r2,
         "expected r2 = " + std::to_string(r.r2) + ", got " +
             std::to_string(r.window[r.q + k][k]));

  {
    int sum = 0;
    for (int i = 0; i <= r.q; ++i) sum += r.at(i, 0);
    push(v, "sum-col-0", sum == r.n1,
         "sum = " + std::to_string(sum) + ", n1 = " + std::to_string(r.n1));
  }
  {
    int sum = 0;
    for (int j = 0; j <= r.p; ++j) sum += r.at(0, j);
    push(v, "sum-row-0", sum == r.n2,
         "sum = " + std::to_string(sum) + ", n2 = " + std::to_string(r.n2));
  }
  for (int k = 1; k < r.rows(); ++k) {
    int sum = 0;
    for (int j = 0; j <= r.p + k; ++j) sum += r.at(k, j);
    push(v, "sum-row-" + std::to_string(k), sum == r.m,
         "sum = " + std::to_string(sum) + ", m = " + std::to_string(r.m));
  }
  for (int k = 1; k < r.cols(); ++k) {
    int sum = 0;
    for (int i = 0; i <= r.q + k; ++i) sum += r.at(i, k);
    push(v, "sum-col-" + std::to_string(k), sum == r.m,
         "sum = " + std::to_string(sum) + ", m = " + std::to_string(r.m));
  }

  auto row_prefix = [&](int i, int jmax) {
    int sum = 0;
    for (int k = 0; k <= jmax; ++k) sum += r.at(i, k);
    return sum;
  };
  auto col_prefix = [&](int j, int imax) {
    int sum = 0;
    for (int k = 0; k <= imax; ++k) sum += r.at(k, j);
    return sum;
  };

  for (int i = 1; i < r.rows(); ++i) {
    for (int j = 1; j < r.cols(); ++j) {
      int bound =
          std::min(row_prefix(i + 1, j + 1), col_prefix(j + 1, i + 1));
      push(v, "interior-bound at " + cell(i, j), r.window[i][j] <= bound,
           std::to_string(r.window[i][j]) + " <= " + std::to_string(bound));
    }
  }
  for (int j = 1; j < r.cols(); ++j) {
    int bound = std::min(r.at(0, j + 1) + r.at(1, j + 1),
                         (r.n2 - r.m) + row_prefix(1, j + 1));
    push(v, "first-row-bound at j=" + std::to_string(j), r.at(0, j) <= bound,
         std::to_string(r.at(0, j)) + " <= " + std::to_string(bound));
  }
  for (int i = 1; i < r.rows(); ++i) {
    int bound = std::min(r.at(i + 1, 0) + r.at(i + 1, 1),
                         (r.n1 - r.m) + col_prefix(1, i + 1));
    push(v, "first-column-bound at i=" + std::to_string(i), r.at(i, 0) <= bound,
         std::to_string(r.at(i, 0)) + " <= " + std::to_string(bound));
  }
  {
    int bound = std::min((r.n1 - r.m) + r.at(0, 1) + r.at(1, 1),
                         (r.n2 - r.m) + r.at(1, 0) + r.at(1, 1));
    push(v, "corner-bound", r.at(0, 0) <= bound,
         std::to_string(r.at(0, 0)) + " <= " + std::to_string(bound));
  }

  // tail shape: rows past q+1 are right-shifts, columns past p+1 down-shifts
  for (int i = r.q + 2; i < r.rows(); ++i) {
    bool ok = true;
    for (int j = 0; j < r.cols(); ++j)
      if (r.window[i][j] != (j >= 1 ? r.window[i - 1][j - 1] : 0)) ok = false;
    push(v, "stationary-row-" + std::to_string(i), ok,
         "row is not the right-shift of the row above", true);
  }
  for (int j = r.p + 2; j < r.cols(); ++j) {
    bool ok = true;
    for (int i = 1; i < r.rows(); ++i)
      if (r.window[i][j] != r.window[i - 1][j - 1]) ok = false;
    if (r.window[0][j] != 0) ok = false;  // band: j > p
    push(v, "stationary-col-" + std::to_string(j), ok,
         "column is not the down-shift of the column left of it", true);
  }
  return v;
}

RankMatrix rank_matrix(const EquivalencePair& pair, const Sampler& s,
                       int margin) {
  if (margin < 1) throw PreconditionError("window margin must be >= 1");
  const int p = effective_order(pair.phi, s);
  const int q = effective_order(pair.psi, s);
  if (p <= 0 || q <= 0)
    throw PreconditionError("rank matrix undefined at this height: (p, q) = (" +
                            std::to_string(p) + ", " + std::to_string(q) +
                            ") needs p, q > 0");

  const int i_max = q + margin;
  const int j_max = p + q + margin;
  const int truncation = std::max(i_max, p + q + 2);

  BlockFamily forward = compute_blocks(pair, Direction::Forward, truncation, s);
  BlockFamily backward =
      compute_blocks(pair, Direction::Backward, std::max(p + q + 2, p + margin), s);
  FarBlockData inf = check_far_blocks(pair, forward, backward, s);

  FiltrationDims dims = filtration_dims(pair, forward, i_max, j_max, s);

  RankMatrix r;
  r.p = p;
  r.q = q;
  r.n1 = pair.phi.source->n();
  r.n2 = pair.phi.target->n();
  r.m = pair.phi.source->m();
  r.r1 = inf.r1;
  r.r2 = inf.r2;
  r.margin = margin;
  r.samples_consistent = dims.consistent;
  r.window.assign(r.rows(), std::vector<int>(r.cols(), 0));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      r.window[i][j] = dims.at(i, j) - dims.at(i - 1, j) - dims.at(i, j - 1) +
                       dims.at(i - 1, j - 1);

  RankValidation validation = validate_rank_matrix(r);
  for (const auto& item : validation.items) {
    if (!item.ok && !item.stationarity)
      throw InvariantViolationError("rank matrix invariant '" +
                                    item.constraint + "' failed: " +
                                    item.detail);
    if (!item.ok) r.stationary_tails = false;
  }
  return r;
}

}  // namespace jetcheck
