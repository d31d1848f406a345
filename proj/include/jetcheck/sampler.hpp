#pragma once

#include <cstdint>
#include <vector>

#include "jetcheck/variable.hpp"

namespace jetcheck {

/// Deterministic coordinate sampler. Identical seed gives an identical sample
/// sequence regardless of platform or thread schedule: the point for trial t
/// depends only on (seed, t) and the sorted variable list.
struct Sampler {
  std::uint64_t seed{42};
  double box_lo{-2.0};
  double box_hi{2.0};
  int trials{5};

  /// Assigns every listed variable; `attempt` selects a resampled draw for
  /// the same logical trial (used when a draw lands on a singular locus).
  Point sample(const std::vector<Variable>& variables, int trial,
               int attempt = 0) const;

  Sampler with_seed(std::uint64_t s) const {
    Sampler out = *this;
    out.seed = s;
    return out;
  }
};

/// Maximum resampling attempts per trial before declaring the sampling
/// degenerate.
inline constexpr int kMaxResampleAttempts = 20;

}  // namespace jetcheck
