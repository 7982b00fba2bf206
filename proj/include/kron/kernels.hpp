#pragma once

#include <cstddef>

// Data-parallel inner kernels. Scalar reference implementations live in
// kernels_scalar.cpp; AVX2 variants in kernels_avx2.cpp. The dispatch table is
// filled in once at startup based on cpuid, so all callers go through the
// kron::kern entry points and get identical results on either path (the AVX2
// variants use the same left-to-right block accumulation order as the scalar
// reference, so sums are bit-identical).

namespace kron::kern {

// y[i] += a * x[i]
using axpy_fn = void (*)(double a, const double* x, double* y, std::size_t n);
// sum_i x[i] * y[i]
using dot_fn = double (*)(const double* x, const double* y, std::size_t n);
// sum_i x[i]^2
using sumsq_fn = double (*)(const double* x, std::size_t n);
// x[i] *= a
using scale_fn = void (*)(double a, double* x, std::size_t n);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace scalar

#ifdef KRONPREC_HAVE_AVX2
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace avx2
#endif

extern axpy_fn axpy;
extern dot_fn dot;
extern sumsq_fn sumsq;
extern scale_fn scale;

// Which implementation the dispatch selected ("scalar" or "avx2").
const char* active_backend();

// Force a backend for testing; returns false if unavailable on this host.
bool select_backend(const char* name);

}  // namespace kron::kern
