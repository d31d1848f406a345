#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace jetcheck::kernels {

/// Whether the OpenMP variants actually fan out (build- and runtime-dependent).
bool parallel_enabled();
int max_threads();

/// Run fn(i) for i in [0, n). The parallel variant preserves the serial
/// result exactly: iterations are independent and write disjoint state; the
/// first exception, if any, is rethrown after the loop joins.
void for_each_index_serial(int n, const std::function<void(int)>& fn);
void for_each_index(int n, const std::function<void(int)>& fn);

/// ranks[t] = numeric rank of matrix_at(t); matrix_at may throw
/// SingularPointError, in which case the rank is recorded as -1 (skipped).
std::vector<int> sample_ranks_serial(
    const std::function<Eigen::MatrixXd(int)>& matrix_at, int trials);
std::vector<int> sample_ranks(
    const std::function<Eigen::MatrixXd(int)>& matrix_at, int trials);

/// For one evaluated coefficient matrix, the grid of intersection dimensions
///   d[i][j] = dim(rowspace(rows of levels <= i) ∩ span(columns of levels <= j))
/// where row_offsets/col_offsets give the first row/column of each level and
/// the exclusive end of the last one.
std::vector<std::vector<int>> intersection_dims_serial(
    const Eigen::MatrixXd& stacked, const std::vector<int>& row_offsets,
    const std::vector<int>& col_offsets);
std::vector<std::vector<int>> intersection_dims(
    const Eigen::MatrixXd& stacked, const std::vector<int>& row_offsets,
    const std::vector<int>& col_offsets);

}  // namespace jetcheck::kernels
