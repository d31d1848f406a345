#pragma once

#include <optional>

#include "jetcheck/expr.hpp"
#include "jetcheck/sampler.hpp"

namespace jetcheck {

struct ZeroTestResult {
  bool is_zero{true};
  std::optional<Point> witness;  // a point where the expression is nonzero
  double witness_value{0.0};
};

/// Probabilistic zero test: true iff |value| <= atol + rtol*scale at every
/// sampled trial, with scale the largest |subterm| met while evaluating.
/// Symbolically-zero ASTs short-circuit. Singular draws are resampled up to
/// kMaxResampleAttempts per trial; if every trial stays singular the sampling
/// is reported degenerate.
ZeroTestResult zero_test(const Expr& e, const Sampler& s);

inline bool is_identically_zero(const Expr& e, const Sampler& s) {
  return zero_test(e, s).is_zero;
}

inline constexpr double kZeroAtol = 1e-9;
inline constexpr double kZeroRtol = 1e-9;

}  // namespace jetcheck
