#include <atomic>
#include <cstdlib>
#include <cstring>

#include "dmin/kernels.hpp"

namespace dmin::kernels {

namespace {

// -1: not yet chosen.
std::atomic<int> g_isa{-1};

Isa detect() {
  const char* env = std::getenv("DMIN_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(DMIN_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  int v = g_isa.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect());
    g_isa.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  g_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n) {
#if defined(DMIN_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::pair_terms(d, s, a, b, n);
#endif
  scalar::pair_terms(d, s, a, b, n);
}

void pair_sech(const double* x, double* w, std::size_t n) {
#if defined(DMIN_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::pair_sech(x, w, n);
#endif
  scalar::pair_sech(x, w, n);
}

}  // namespace dmin::kernels
