#pragma once

#include <cstdint>
#include <random>

namespace edgerecon {

using Rng = std::mt19937_64;

// std::uniform_real_distribution is implementation-defined; traces must be
// bit-identical across standard libraries, so the conversion is spelled out.
inline double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

}  // namespace edgerecon
