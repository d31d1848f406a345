#include "jetcheck/feasibility.hpp"

#include <algorithm>

#include "jetcheck/errors.hpp"
#include "jetcheck/kernels.hpp"

namespace jetcheck {

void HeightQuery::validate() const {
  if (n1 < 0 || n2 < 0 || p < 0 || q < 0 || r1 < 0 || r2 < 0)
    throw PreconditionError("height query values must be nonnegative");
  if (m < 1) throw PreconditionError("a control system has m >= 1");
  if (p > 0 && q > 0) {
    if (r1 < 1 || r2 < 1)
      throw PreconditionError(
          "far ranks must satisfy r1, r2 >= 1 when p, q > 0");
    if (r1 + r2 > m)
      throw PreconditionError(
          "far ranks must satisfy r1 + r2 <= m when p, q > 0 (got " +
          std::to_string(r1) + " + " + std::to_string(r2) + " > " +
          std::to_string(m) + ")");
  }
}

HeightReport check_height(const HeightQuery& query) {
  query.validate();
  HeightReport rep;
  const long long n1 = query.n1, n2 = query.n2;
  const long long p = query.p, q = query.q;
  const long long r1 = query.r1, r2 = query.r2;

  if (p > 0 && q > 0) {
    rep.delta = query.m - query.r1 - query.r2;
    const long long d = rep.delta;
    rep.lhs = std::min((p - 1) * d + r1 * p + n1, (q - 1) * d + r2 * q + n2);
    rep.rhs = std::max(r1 * p + n1, r2 * q + n2);
    rep.admissible = rep.lhs >= rep.rhs;
    rep.equality = rep.lhs == rep.rhs;
    rep.equality_case = rep.delta == 0;
    return rep;
  }

  rep.lhs = n1 + p;
  rep.rhs = n2 + q;
  rep.equality = rep.lhs == rep.rhs;
  if (p == 0 && q == 0) {
    rep.admissible = n1 == n2;
  } else if (query.m == 2) {
    // two controls force the state-count balance on every height
    rep.admissible = rep.equality;
  } else {
    rep.admissible = true;  // not ruled out by the encoded conditions
  }
  return rep;
}

std::vector<HeightCandidate> enumerate_heights(int n1, int n2, int m,
                                               int p_max, int q_max) {
  if (n1 < 0 || n2 < 0 || m < 1 || p_max < 0 || q_max < 0)
    throw PreconditionError("enumeration bounds must be nonnegative, m >= 1");

  std::vector<HeightCandidate> out;
  if (n1 == n2) {
    HeightCandidate c;
    c.kind = CandidateKind::Static;
    c.report = check_height({n1, n2, m, 0, 0, 0, 0});
    out.push_back(c);
  }
  if (n1 > n2 && n1 - n2 <= q_max) {
    HeightCandidate c;
    c.q = n1 - n2;
    c.kind = CandidateKind::Reduction;
    c.report = check_height({n1, n2, m, 0, c.q, 0, 0});
    if (c.report.admissible) out.push_back(c);
  }
  if (n2 > n1 && n2 - n1 <= p_max) {
    HeightCandidate c;
    c.p = n2 - n1;
    c.kind = CandidateKind::Reduction;
    c.report = check_height({n1, n2, m, c.p, 0, 0, 0});
    if (c.report.admissible) out.push_back(c);
  }

  // independent (p, q) cells; each cell fills its own slot
  std::vector<std::vector<HeightCandidate>> cells(
      static_cast<std::size_t>(p_max) * q_max);
  kernels::for_each_index(p_max * q_max, [&](int cell) {
    int p = cell / q_max + 1;
    int q = cell % q_max + 1;
    for (int r1 = 1; r1 < m; ++r1) {
      for (int r2 = 1; r1 + r2 <= m; ++r2) {
        HeightQuery query{n1, n2, m, p, q, r1, r2};
        HeightReport rep = check_height(query);
        if (rep.admissible)
          cells[cell].push_back({p, q, r1, r2, CandidateKind::Inequality, rep});
      }
    }
  });
  for (const auto& cell : cells)
    out.insert(out.end(), cell.begin(), cell.end());
  return out;
}

namespace {

/// Row-major backtracking over the minimal stationary window (rows 0..q+1,
/// columns 0..p+q+1). Cells right of column p+1 are diagonal shifts of the
/// previous row; the final candidate is expanded and checked against the
/// full validator, so the search is exactly as strong as the constraints it
/// reports.
class WindowSearch {
 public:
  WindowSearch(int n1, int n2, int m, int p, int q, int r1, int r2, int margin)
      : n1_(n1), n2_(n2), m_(m), p_(p), q_(q), r1_(r1), r2_(r2),
        margin_(margin), rows_(q + 2), cols_(p + q + 2),
        w_(rows_, std::vector<int>(cols_, -1)) {}

  std::optional<RankMatrix> run() {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (j > p_ + i || i > q_ + j) w_[i][j] = 0;
    if (!fix(0, p_, r1_) || !fix(1, p_ + 1, r1_) || !fix(q_, 0, r2_) ||
        !fix(q_ + 1, 1, r2_))
      return std::nullopt;

    col_sum_.assign(cols_, 0);
    return fill_row(0) ? std::make_optional(expand()) : std::nullopt;
  }

 private:
  bool fix(int i, int j, int v) {
    if (i >= rows_ || j >= cols_) return true;
    if (w_[i][j] == -1 || w_[i][j] == v) {
      w_[i][j] = v;
      return true;
    }
    return false;  // conflicting fixed values: unsatisfiable
  }

  int row_target(int i) const { return i == 0 ? n2_ : m_; }

  bool fill_row(int i) {
    if (i == rows_) return finish();

    // cells right of column p+1 are diagonal shifts of the previous row;
    // recomputed unconditionally because backtracking may have changed it
    for (int j = p_ + 2; j < cols_ && j <= p_ + i; ++j)
      w_[i][j] = w_[i - 1][j - 1];

    std::vector<int> free_cells;
    int budget = row_target(i);
    for (int j = 0; j < cols_ && j <= p_ + i; ++j) {
      if (w_[i][j] == -1)
        free_cells.push_back(j);
      else
        budget -= w_[i][j];
    }
    if (budget < 0) return false;
    if (free_cells.empty() && budget != 0) return false;
    return assign(i, free_cells, 0, budget);
  }

  bool assign(int i, const std::vector<int>& free_cells, std::size_t idx,
              int budget) {
    if (idx == free_cells.size()) {
      if (budget != 0) return false;
      if (i == q_) {
        int c0 = 0;
        for (int r = 0; r <= q_; ++r) c0 += w_[r][0];
        if (c0 != n1_) return false;
      }
      // account this row into the running column sums
      for (int j = 0; j < cols_; ++j) col_sum_[j] += w_[i][j];
      bool ok = fill_row(i + 1);
      for (int j = 0; j < cols_; ++j) col_sum_[j] -= w_[i][j];
      return ok;
    }

    int j = free_cells[idx];
    bool last = idx + 1 == free_cells.size();
    int lo = last ? budget : 0;
    int hi = budget;
    for (int v = lo; v <= hi; ++v) {
      int col_cap = j == 0 ? n1_ : m_;
      if (col_sum_[j] + v > col_cap) break;
      w_[i][j] = v;
      if (assign(i, free_cells, idx + 1, budget - v)) return true;
    }
    w_[i][j] = -1;
    return false;
  }

  bool finish() {
    RankMatrix r = expand();
    if (!validate_rank_matrix(r).all_ok()) return false;
    found_ = r;
    return true;
  }

  RankMatrix expand() const {
    if (found_) return *found_;
    RankMatrix r;
    r.p = p_;
    r.q = q_;
    r.n1 = n1_;
    r.n2 = n2_;
    r.m = m_;
    r.r1 = r1_;
    r.r2 = r2_;
    r.margin = margin_;
    r.window.assign(r.rows(), std::vector<int>(r.cols(), 0));
    for (int i = 0; i < r.rows(); ++i) {
      for (int j = 0; j < r.cols(); ++j) {
        if (j > p_ + i || i > q_ + j) continue;  // band zeros
        int ii = i, jj = j;
        while ((ii >= rows_ || jj >= cols_) && ii > 0 && jj > 0) {
          --ii;
          --jj;
        }
        if (ii < rows_ && jj < cols_) r.window[i][j] = w_[ii][jj];
      }
    }
    return r;
  }

  const int n1_, n2_, m_, p_, q_, r1_, r2_, margin_;
  const int rows_, cols_;
  std::vector<std::vector<int>> w_;
  std::vector<int> col_sum_;
  std::optional<RankMatrix> found_;
};

}  // namespace

std::optional<RankMatrix> search_rank_matrix(int n1, int n2, int m, int p,
                                             int q, int r1, int r2,
                                             int window_margin) {
  if (p < 1 || q < 1)
    throw PreconditionError("the window search needs p, q >= 1");
  if (window_margin < 1)
    throw PreconditionError(
        "window margin must be >= 1 so the stationary tail rows and columns "
        "are representable");
  HeightQuery{n1, n2, m, p, q, r1, r2}.validate();
  WindowSearch search(n1, n2, m, p, q, r1, r2, window_margin);
  return search.run();
}

}  // namespace jetcheck
