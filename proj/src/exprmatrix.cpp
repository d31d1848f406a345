#include "jetcheck/exprmatrix.hpp"

#include <set>

#include "jetcheck/errors.hpp"
#include "jetcheck/kernels.hpp"

namespace jetcheck {

std::vector<Variable> ExprMatrix::variables() const {
  std::set<Variable> vars;
  for (const auto& e : data_) {
    for (const auto& v : free_variables(e)) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

Eigen::MatrixXd ExprMatrix::evaluate_at(const Point& pt) const {
  Eigen::MatrixXd out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = evaluate(at(r, c), pt);
  return out;
}

bool ExprMatrix::entrywise_equal(const ExprMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!expr_equal(data_[i], other.data_[i])) return false;
  return true;
}

int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cut = kRankThreshold * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut && sv(i) > 0.0) ++rank;
  return rank;
}

int generic_rank(const ExprMatrix& m, const Sampler& s) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<Variable> vars = m.variables();

  auto matrix_at = [&](int trial) -> Eigen::MatrixXd {
    for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
      Point pt = s.sample(vars, trial, attempt);
      try {
        return m.evaluate_at(pt);
      } catch (const SingularPointError&) {
        // try the next draw for this trial
      }
    }
    throw SingularPointError("trial stayed singular after resampling");
  };

  std::vector<int> ranks = kernels::sample_ranks(matrix_at, s.trials);
  int best = -1;
  for (int r : ranks) best = std::max(best, r);
  if (best < 0)
    throw DegenerateSamplingError(
        "degenerate sampling: no rank sample could be evaluated");
  return best;
}

}  // namespace jetcheck
