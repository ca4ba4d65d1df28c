#include <cmath>
#include <cstddef>

#include "dgn/kernels.hpp"

namespace dgn::kernels {
namespace {

double dot_(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double max_(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

void axpy_(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul_(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void relu_(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_(const double* z, const double* dy, double* dz, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dz[i] = z[i] > 0.0 ? dy[i] : 0.0;
}

void exp_(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void log1p_(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log1p(x[i]);
}

void inv1p_(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + x[i]);
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      "scalar", dot_,  sum_,           max_, axpy_,   scal_,
      mul_,     relu_, relu_backward_, exp_, log1p_,  inv1p_,
  };
  return k;
}

}  // namespace dgn::kernels
