#pragma once

#include <cstddef>
#include <string_view>

namespace dgn::kernels {

// Double-precision vector kernels behind every arithmetic inner loop in the
// library. Two implementations exist: a scalar reference and an AVX2+FMA
// variant selected at runtime; they are equivalence-tested against each other.
//
// Contracts:
//  - All functions are pure and position-independent: out[i] depends only on
//    the input values at i (reductions depend on all values and on n).
//  - Reductions (dot, sum) accumulate in an implementation-defined but fixed
//    order, so results are deterministic per backend but may differ between
//    backends by rounding.
//  - exp: inputs below -708.39 may flush to exactly 0 instead of a denormal.
//  - log1p: defined for x > -1; inputs are expected to be finite.
//  - max requires n >= 1.
struct Kernels {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);  // y += a*x
  void (*scal)(double a, double* x, std::size_t n);                   // x *= a
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  void (*relu)(const double* x, double* out, std::size_t n);
  // dz = dy where z > 0, else 0 (subgradient 0 at z == 0).
  void (*relu_backward)(const double* z, const double* dy, double* dz, std::size_t n);
  void (*exp)(const double* x, double* out, std::size_t n);
  void (*log1p)(const double* x, double* out, std::size_t n);
  void (*inv1p)(const double* x, double* out, std::size_t n);  // 1 / (1 + x)
};

const Kernels& scalar();

// AVX2+FMA kernels, or nullptr when the build or the CPU does not support them.
const Kernels* avx2();

// Active backend. Defaults to the best supported one; the DGN_KERNELS
// environment variable ("scalar", "avx2", "auto") overrides at first use.
const Kernels& active();

// Select a backend by name; returns false (and leaves the active backend
// unchanged) if the name is unknown or unsupported on this machine.
bool set_active(std::string_view name);

}  // namespace dgn::kernels
