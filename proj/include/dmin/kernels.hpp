#pragma once

#include <cstddef>

namespace dmin::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

// Per-pair transcendental terms of the spherical functional:
//   a[i] = atan(exp(d[i])), b[i] = atan(exp(s[i])).
// pair_sech: w[i] = 1 / cosh(x[i]).

namespace scalar {
void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n);
void pair_sech(const double* x, double* w, std::size_t n);
}  // namespace scalar

#if defined(DMIN_HAVE_AVX2)
namespace avx2 {
void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n);
void pair_sech(const double* x, double* w, std::size_t n);
}  // namespace avx2
#endif

/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();

/// Variant used by the dispatching entry points. Chosen on first use from the
/// CPU features; DMIN_SIMD=scalar in the environment forces the scalar path.
Isa active_isa();
/// Overrides the selection (tests). Requesting an unavailable variant falls back to scalar.
void force_isa(Isa isa);

void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n);
void pair_sech(const double* x, double* w, std::size_t n);

}  // namespace dmin::kernels
