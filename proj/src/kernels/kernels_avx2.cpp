// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "pht/kernels.hpp"

namespace pht::kernels {
namespace {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

bool and_words_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i r = _mm256_and_si256(x, y);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    acc = _mm256_or_si256(acc, r);
  }
  std::uint64_t tail = 0;
  for (; i < n; ++i) {
    dst[i] = a[i] & b[i];
    tail |= dst[i];
  }
  return tail != 0 || !_mm256_testz_si256(acc, acc);
}

std::ptrdiff_t highest_bit_avx2(const std::uint64_t* words, std::size_t n) {
  std::size_t i = n;
  // Peel the ragged top so the remaining block count is a multiple of 4.
  while (i % 4 != 0) {
    --i;
    if (words[i] != 0) {
      return static_cast<std::ptrdiff_t>(i * 64 + 63 - std::countl_zero(words[i]));
    }
  }
  while (i >= 4) {
    i -= 4;
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    if (!_mm256_testz_si256(v, v)) {
      for (std::size_t j = i + 4; j-- > i;) {
        if (words[j] != 0) {
          return static_cast<std::ptrdiff_t>(j * 64 + 63 - std::countl_zero(words[j]));
        }
      }
    }
  }
  return -1;
}

void project_avx2(const double* x, const double* y, const double* z, std::size_t n, double v0,
                  double v1, double v2, double* out) {
  const __m256d a = _mm256_set1_pd(v0);
  const __m256d b = _mm256_set1_pd(v1);
  const __m256d c = _mm256_set1_pd(v2);
  std::size_t i = 0;
  if (z == nullptr) {
    for (; i + 4 <= n; i += 4) {
      __m256d s = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), a),
                                _mm256_mul_pd(_mm256_loadu_pd(y + i), b));
      _mm256_storeu_pd(out + i, s);
    }
    for (; i < n; ++i) out[i] = x[i] * v0 + y[i] * v1;
    return;
  }
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), a),
                              _mm256_mul_pd(_mm256_loadu_pd(y + i), b));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(z + i), c));
    _mm256_storeu_pd(out + i, s);
  }
  for (; i < n; ++i) out[i] = (x[i] * v0 + y[i] * v1) + z[i] * v2;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{xor_words_avx2, and_words_avx2, highest_bit_avx2, project_avx2};
  return table;
}

}  // namespace pht::kernels
