#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pht/kernels.hpp"

namespace pht::kernels {

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(PHT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(PHT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(b)));
  }
  switch (b) {
#if defined(PHT_HAVE_AVX2)
    case Backend::avx2: return avx2_table();
#endif
#if defined(PHT_HAVE_NEON)
    case Backend::neon: return neon_table();
#endif
    default: return scalar_table();
  }
}

Backend detected_backend() {
  if (const char* env = std::getenv("PHT_SIMD")) {
    std::string_view want(env);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (want == backend_name(b) && backend_available(b)) return b;
    }
  }
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

namespace {

struct State {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;
  State() : backend(detected_backend()), table(&table_for(backend.load())) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Backend active_backend() { return state().backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  const KernelTable* t = &table_for(b);
  state().table.store(t);
  state().backend.store(b);
}

const KernelTable& active() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace pht::kernels
