#include "jetcheck/kernels.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jetcheck/errors.hpp"
#include "jetcheck/exprmatrix.hpp"

namespace jetcheck::kernels {

bool parallel_enabled() {
#ifdef _OPENMP
  return max_threads() > 1;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void for_each_index_serial(int n, const std::function<void(int)>& fn) {
  for (int i = 0; i < n; ++i) fn(i);
}

void for_each_index(int n, const std::function<void(int)>& fn) {
#ifdef _OPENMP
  std::exception_ptr first_error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for_each_index_serial(n, fn);
#endif
}

std::vector<int> sample_ranks_serial(
    const std::function<Eigen::MatrixXd(int)>& matrix_at, int trials) {
  std::vector<int> ranks(trials, -1);
  for (int t = 0; t < trials; ++t) {
    try {
      ranks[t] = numeric_rank(matrix_at(t));
    } catch (const SingularPointError&) {
      ranks[t] = -1;
    }
  }
  return ranks;
}

std::vector<int> sample_ranks(
    const std::function<Eigen::MatrixXd(int)>& matrix_at, int trials) {
  std::vector<int> ranks(trials, -1);
  for_each_index(trials, [&](int t) {
    try {
      ranks[t] = numeric_rank(matrix_at(t));
    } catch (const SingularPointError&) {
      ranks[t] = -1;
    }
  });
  return ranks;
}

namespace {

std::vector<std::vector<int>> intersection_dims_impl(
    const Eigen::MatrixXd& stacked, const std::vector<int>& row_offsets,
    const std::vector<int>& col_offsets, bool parallel) {
  const int levels_i = static_cast<int>(row_offsets.size()) - 1;
  const int levels_j = static_cast<int>(col_offsets.size()) - 1;
  const int basis = static_cast<int>(stacked.cols());
  std::vector<std::vector<int>> d(levels_i, std::vector<int>(levels_j, 0));

  auto cell = [&](int flat) {
    int i = flat / levels_j;
    int j = flat % levels_j;
    int nrows = row_offsets[i + 1];
    int vdim = col_offsets[j + 1];
    Eigen::MatrixXd u = stacked.topRows(nrows);
    int dim_u = numeric_rank(u);
    // dim(U + V): append indicator rows for the V-columns
    Eigen::MatrixXd uv(nrows + vdim, basis);
    uv.topRows(nrows) = u;
    uv.bottomRows(vdim).setZero();
    for (int k = 0; k < vdim; ++k) uv(nrows + k, k) = 1.0;
    int dim_uv = numeric_rank(uv);
    d[i][j] = dim_u + vdim - dim_uv;
  };

  if (parallel)
    for_each_index(levels_i * levels_j, cell);
  else
    for_each_index_serial(levels_i * levels_j, cell);
  return d;
}

}  // namespace

std::vector<std::vector<int>> intersection_dims_serial(
    const Eigen::MatrixXd& stacked, const std::vector<int>& row_offsets,
    const std::vector<int>& col_offsets) {
  return intersection_dims_impl(stacked, row_offsets, col_offsets, false);
}

std::vector<std::vector<int>> intersection_dims(
    const Eigen::MatrixXd& stacked, const std::vector<int>& row_offsets,
    const std::vector<int>& col_offsets) {
  return intersection_dims_impl(stacked, row_offsets, col_offsets, true);
}

}  // namespace jetcheck::kernels
