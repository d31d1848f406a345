#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jetcheck/expr.hpp"
#include "jetcheck/sampler.hpp"

namespace jetcheck {

/// Dense matrix of expressions (entries default to the constant 0).
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Expr& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Expr& at(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::vector<Variable> variables() const;
  Eigen::MatrixXd evaluate_at(const Point& pt) const;

  bool entrywise_equal(const ExprMatrix& other) const;

 private:
  int rows_{0}, cols_{0};
  std::vector<Expr> data_;
};

/// Numeric rank with singular values below 1e-8 * sigma_max treated as zero.
int numeric_rank(const Eigen::MatrixXd& m);

/// Generic rank at sampled points: the maximum numeric rank over the
/// sampler's trials (rank can only drop on special loci). Singular draws are
/// resampled; throws DegenerateSamplingError when nothing evaluates.
int generic_rank(const ExprMatrix& m, const Sampler& s);

inline constexpr double kRankThreshold = 1e-8;

}  // namespace jetcheck
