#pragma once

#include <random>

namespace pht {

// 53-bit uniform in [0, 1) independent of the standard library's distributions,
// so sequences are identical across standard library implementations.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pht
