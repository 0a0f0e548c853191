#include <cmath>

#include "dmin/kernels.hpp"

namespace dmin::kernels::scalar {

void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::atan(std::exp(d[i]));
    b[i] = std::atan(std::exp(s[i]));
  }
}

void pair_sech(const double* x, double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::exp(-std::fabs(x[i]));
    w[i] = 2.0 * t / (1.0 + t * t);
  }
}

}  // namespace dmin::kernels::scalar
