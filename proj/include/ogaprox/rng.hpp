#pragma once

#include <cstdint>

#include "ogaprox/vec.hpp"

namespace ogaprox {

/// Deterministic uniform sampler (splitmix64 core). Used for probe points so
/// that identical seeds give bit-identical samples on every platform; the
/// standard-library distributions do not promise that.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vec uniform_vec(std::size_t dim, double lo, double hi) {
    Vec v(dim);
    for (auto& c : v) c = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ogaprox
