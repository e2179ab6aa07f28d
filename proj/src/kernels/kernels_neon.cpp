#include <arm_neon.h>

#include <bit>

#include "pht/kernels.hpp"

namespace pht::kernels {
namespace {

void xor_words_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

bool and_words_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t r = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    vst1q_u64(dst + i, r);
    acc = vorrq_u64(acc, r);
  }
  std::uint64_t any = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) {
    dst[i] = a[i] & b[i];
    any |= dst[i];
  }
  return any != 0;
}

std::ptrdiff_t highest_bit_neon(const std::uint64_t* words, std::size_t n) {
  for (std::size_t i = n; i-- > 0;) {
    if (words[i] != 0) {
      return static_cast<std::ptrdiff_t>(i * 64 + 63 - std::countl_zero(words[i]));
    }
  }
  return -1;
}

void project_neon(const double* x, const double* y, const double* z, std::size_t n, double v0,
                  double v1, double v2, double* out) {
  const float64x2_t a = vdupq_n_f64(v0);
  const float64x2_t b = vdupq_n_f64(v1);
  const float64x2_t c = vdupq_n_f64(v2);
  std::size_t i = 0;
  // vmulq/vaddq rather than vfmaq so rounding matches the scalar path.
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vaddq_f64(vmulq_f64(vld1q_f64(x + i), a), vmulq_f64(vld1q_f64(y + i), b));
    if (z != nullptr) s = vaddq_f64(s, vmulq_f64(vld1q_f64(z + i), c));
    vst1q_f64(out + i, s);
  }
  for (; i < n; ++i) {
    double s = x[i] * v0 + y[i] * v1;
    out[i] = z != nullptr ? s + z[i] * v2 : s;
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{xor_words_neon, and_words_neon, highest_bit_neon, project_neon};
  return table;
}

}  // namespace pht::kernels
