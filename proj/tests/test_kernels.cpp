#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dmin/kernels.hpp"

namespace k = dmin::kernels;

namespace {

struct Inputs {
  std::vector<double> d, s;
};

Inputs random_inputs(std::size_t n, double range, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-range, range);
  Inputs in{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    in.d[i] = u(rng);
    in.s[i] = u(rng);
  }
  return in;
}

}  // namespace

TEST_CASE("scalar kernels agree with libm") {
  const Inputs in = random_inputs(1001, 40, 3);
  std::vector<double> a(in.d.size()), b(in.d.size()), w(in.d.size());
  k::scalar::pair_terms(in.d.data(), in.s.data(), a.data(), b.data(), a.size());
  k::scalar::pair_sech(in.d.data(), w.data(), w.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::fabs(a[i] - std::atan(std::exp(in.d[i]))) < 1e-15);
    CHECK(std::fabs(b[i] - std::atan(std::exp(in.s[i]))) < 1e-15);
    CHECK(std::fabs(w[i] - 1 / std::cosh(in.d[i])) < 1e-15);
  }
}

#if defined(DMIN_HAVE_AVX2)
TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!k::avx2_available()) {
    MESSAGE("CPU lacks AVX2; skipping");
    return;
  }
  // Odd lengths exercise the tail loop; the wide range covers overflow of e^x.
  for (std::size_t n : {1u, 3u, 4u, 7u, 1000u, 4099u}) {
    const Inputs in = random_inputs(n, 700, static_cast<unsigned>(n));
    std::vector<double> a0(n), b0(n), a1(n), b1(n), w0(n), w1(n);
    k::scalar::pair_terms(in.d.data(), in.s.data(), a0.data(), b0.data(), n);
    k::avx2::pair_terms(in.d.data(), in.s.data(), a1.data(), b1.data(), n);
    k::scalar::pair_sech(in.s.data(), w0.data(), n);
    k::avx2::pair_sech(in.s.data(), w1.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(a0[i] - a1[i]) < 1e-14);
      CHECK(std::fabs(b0[i] - b1[i]) < 1e-14);
      CHECK(std::fabs(w0[i] - w1[i]) <= 1e-14 * std::max(1.0, w0[i]));
    }
  }
}
#endif

TEST_CASE("dispatch override") {
  const k::Isa initial = k::active_isa();
  k::force_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  k::force_isa(k::Isa::Avx2);
  CHECK(k::active_isa() == (k::avx2_available() ? k::Isa::Avx2 : k::Isa::Scalar));
  // Either variant through the dispatcher yields the same numbers.
  const Inputs in = random_inputs(257, 30, 12);
  std::vector<double> a(257), b(257), a2(257), b2(257);
  k::pair_terms(in.d.data(), in.s.data(), a.data(), b.data(), a.size());
  k::force_isa(k::Isa::Scalar);
  k::pair_terms(in.d.data(), in.s.data(), a2.data(), b2.data(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - a2[i]) < 1e-14);
  k::force_isa(initial);
  CHECK(std::string(k::isa_name(k::Isa::Scalar)) == "scalar");
}
