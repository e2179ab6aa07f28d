#include "pht/kernels.hpp"

#include <bit>

namespace pht::kernels {
namespace {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

bool and_words_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n) {
  std::uint64_t any = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = a[i] & b[i];
    any |= dst[i];
  }
  return any != 0;
}

std::ptrdiff_t highest_bit_scalar(const std::uint64_t* words, std::size_t n) {
  for (std::size_t i = n; i-- > 0;) {
    if (words[i] != 0) {
      return static_cast<std::ptrdiff_t>(i * 64 + 63 - std::countl_zero(words[i]));
    }
  }
  return -1;
}

void project_scalar(const double* x, const double* y, const double* z, std::size_t n, double v0,
                    double v1, double v2, double* out) {
  if (z == nullptr) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * v0 + y[i] * v1;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] * v0 + y[i] * v1) + z[i] * v2;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{xor_words_scalar, and_words_scalar, highest_bit_scalar,
                                 project_scalar};
  return table;
}

}  // namespace pht::kernels
