// Times the serial reference kernels against the OpenMP variants on
// representative workloads.

#include <chrono>
#include <iostream>

#include "jetcheck/builtins.hpp"
#include "jetcheck/feasibility.hpp"
#include "jetcheck/kernels.hpp"
#include "jetcheck/rankmatrix.hpp"

using namespace jetcheck;
namespace chrono = std::chrono;

namespace {

double ms_since(chrono::steady_clock::time_point t0) {
  return chrono::duration_cast<chrono::microseconds>(
             chrono::steady_clock::now() - t0)
             .count() /
         1000.0;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::cout << name << ":  serial " << serial_ms << " ms,  parallel "
            << parallel_ms << " ms,  speedup "
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "x\n";
}

}  // namespace

int main() {
  std::cout << "threads available: " << kernels::max_threads()
            << (kernels::parallel_enabled() ? "" : " (parallel disabled)")
            << "\n\n";

  // --- rank sweep over many sampled evaluations of a symbolic Jacobian ---
  {
    ProblemFile file = load_builtin("pvtol");
    const EquivalenceMap& psi = file.pair("pvtol").psi;
    std::vector<Variable> coords = psi.source->coordinates(psi.declared_order);
    std::vector<Expr> comps = psi.state_components;
    comps.insert(comps.end(), psi.control_components.begin(),
                 psi.control_components.end());
    ExprMatrix jac(static_cast<int>(comps.size()),
                   static_cast<int>(coords.size()));
    for (std::size_t r = 0; r < comps.size(); ++r)
      for (std::size_t c = 0; c < coords.size(); ++c)
        jac.at(static_cast<int>(r), static_cast<int>(c)) =
            differentiate(comps[r], coords[c]);

    Sampler s = file.sampler;
    const int trials = 400;
    std::vector<Variable> vars = jac.variables();
    auto matrix_at = [&](int t) { return jac.evaluate_at(s.sample(vars, t)); };

    auto t0 = chrono::steady_clock::now();
    auto serial = kernels::sample_ranks_serial(matrix_at, trials);
    double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    auto parallel = kernels::sample_ranks(matrix_at, trials);
    double parallel_ms = ms_since(t0);
    if (serial != parallel) {
      std::cerr << "rank sweep mismatch between serial and parallel\n";
      return 1;
    }
    report("jacobian rank sweep (400 samples)", serial_ms, parallel_ms);
  }

  // --- intersection-dimension grid on a stacked coefficient matrix ---
  {
    const int levels_i = 8, levels_j = 12, block = 4;
    std::vector<int> row_offsets{0}, col_offsets{0};
    for (int i = 0; i < levels_i; ++i)
      row_offsets.push_back(row_offsets.back() + block);
    for (int j = 0; j < levels_j; ++j)
      col_offsets.push_back(col_offsets.back() + block);
    srand(7);
    Eigen::MatrixXd stacked =
        Eigen::MatrixXd::Random(row_offsets.back(), col_offsets.back());

    const int reps = 30;
    auto t0 = chrono::steady_clock::now();
    std::vector<std::vector<int>> serial_d;
    for (int r = 0; r < reps; ++r)
      serial_d =
          kernels::intersection_dims_serial(stacked, row_offsets, col_offsets);
    double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    std::vector<std::vector<int>> parallel_d;
    for (int r = 0; r < reps; ++r)
      parallel_d =
          kernels::intersection_dims(stacked, row_offsets, col_offsets);
    double parallel_ms = ms_since(t0);
    if (serial_d != parallel_d) {
      std::cerr << "intersection grid mismatch between serial and parallel\n";
      return 1;
    }
    report("intersection grid (8x12 cells, 30 reps)", serial_ms, parallel_ms);
  }

  // --- height-profile grid with witness searches ---
  {
    auto t0 = chrono::steady_clock::now();
    long long count = 0;
    for (int n1 = 1; n1 <= 8; ++n1)
      for (int n2 = 1; n2 <= 8; ++n2)
        count += static_cast<long long>(
            enumerate_heights(n1, n2, 3, 4, 4).size());
    double grid_ms = ms_since(t0);
    std::cout << "height grid (64 cells, m=3): " << grid_ms << " ms, "
              << count << " candidates\n";

    t0 = chrono::steady_clock::now();
    int witnesses = 0;
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q)
        if (search_rank_matrix(7, 7, 3, p, q, 1, 1).has_value()) ++witnesses;
    std::cout << "witness searches (9 profiles, n=7, m=3): " << ms_since(t0)
              << " ms, " << witnesses << " witnesses\n";
  }
  return 0;
}
