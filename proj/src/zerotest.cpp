#include "jetcheck/zerotest.hpp"

#include <cmath>

#include "jetcheck/errors.hpp"

namespace jetcheck {

ZeroTestResult zero_test(const Expr& e, const Sampler& s) {
  ZeroTestResult result;
  if (e.is_zero()) return result;

  std::vector<Variable> vars = free_variables(e);
  if (vars.empty()) {
    // constant expression: evaluate once
    double scale = 0.0;
    double v = evaluate(e, Point{}, &scale);
    if (std::abs(v) > kZeroAtol + kZeroRtol * scale) {
      result.is_zero = false;
      result.witness = Point{};
      result.witness_value = v;
    }
    return result;
  }

  int evaluated = 0;
  for (int trial = 0; trial < s.trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxResampleAttempts && !done; ++attempt) {
      Point pt = s.sample(vars, trial, attempt);
      try {
        double scale = 0.0;
        double v = evaluate(e, pt, &scale);
        ++evaluated;
        done = true;
        if (std::abs(v) > kZeroAtol + kZeroRtol * scale) {
          result.is_zero = false;
          result.witness = pt;
          result.witness_value = v;
          return result;
        }
      } catch (const SingularPointError&) {
        // resample away from the singular locus
      }
    }
  }
  if (evaluated == 0)
    throw DegenerateSamplingError(
        "degenerate sampling: every sample point was singular");
  return result;
}

}  // namespace jetcheck
