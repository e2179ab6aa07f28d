#pragma once

// Data-parallel inner loops shared by the F2 linear algebra, nerve
// construction and height projection. Every kernel has a scalar reference
// implementation; vector variants (AVX2 on x86-64, NEON on aarch64) are
// selected once at startup and must agree with the scalar path bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pht::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

struct KernelTable {
  // dst ^= src over n words.
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  // dst = a & b over n words; returns true iff any resulting word is nonzero.
  bool (*and_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n);
  // Index of the highest set bit, or -1 when all n words are zero.
  std::ptrdiff_t (*highest_bit)(const std::uint64_t* words, std::size_t n);
  // out[i] = (x[i]*v0 + y[i]*v1) + z[i]*v2, z ignored when null.
  void (*project)(const double* x, const double* y, const double* z, std::size_t n, double v0,
                  double v1, double v2, double* out);
};

// Implementations; the vector tables are only linked on matching targets.
const KernelTable& scalar_table();
#if defined(PHT_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(PHT_HAVE_NEON)
const KernelTable& neon_table();
#endif

// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend b);

// Best available backend, unless PHT_SIMD=scalar|avx2|neon overrides it.
Backend detected_backend();

Backend active_backend();
// Switches the process-wide table. Throws std::invalid_argument when the
// backend is unavailable. Not meant to be called while kernels are running.
void set_backend(Backend b);

const KernelTable& table_for(Backend b);
const KernelTable& active();

inline void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().xor_words(dst.data(), src.data(), dst.size());
}

inline bool and_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                      std::span<const std::uint64_t> b) {
  return active().and_words(dst.data(), a.data(), b.data(), dst.size());
}

inline std::ptrdiff_t highest_bit(std::span<const std::uint64_t> words) {
  return active().highest_bit(words.data(), words.size());
}

}  // namespace pht::kernels
