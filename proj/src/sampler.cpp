#include "jetcheck/sampler.hpp"

#include <algorithm>

namespace jetcheck {

namespace {

// splitmix64; fixed here so sampled points never depend on the standard
// library's distribution implementation
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

Point Sampler::sample(const std::vector<Variable>& variables, int trial,
                      int attempt) const {
  std::vector<Variable> sorted = variables;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::uint64_t stream = mix(seed ^ mix(static_cast<std::uint64_t>(trial) +
                                        (static_cast<std::uint64_t>(attempt)
                                         << 20)));
  Point pt;
  std::uint64_t state = stream;
  for (const auto& v : sorted) {
    state = mix(state);
    pt.set(v, box_lo + (box_hi - box_lo) * unit_double(state));
  }
  return pt;
}

}  // namespace jetcheck
