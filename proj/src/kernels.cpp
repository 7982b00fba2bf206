#include "kron/kernels.hpp"

#include <cstring>

namespace kron::kern {

namespace {

bool host_has_avx2() {
#if defined(KRONPREC_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const char* g_backend = "scalar";

}  // namespace

axpy_fn axpy = scalar::axpy;
dot_fn dot = scalar::dot;
sumsq_fn sumsq = scalar::sumsq;
scale_fn scale = scalar::scale;

bool select_backend(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    axpy = scalar::axpy;
    dot = scalar::dot;
    sumsq = scalar::sumsq;
    scale = scalar::scale;
    g_backend = "scalar";
    return true;
  }
#ifdef KRONPREC_HAVE_AVX2
  if (std::strcmp(name, "avx2") == 0 && host_has_avx2()) {
    axpy = avx2::axpy;
    dot = avx2::dot;
    sumsq = avx2::sumsq;
    scale = avx2::scale;
    g_backend = "avx2";
    return true;
  }
#endif
  return false;
}

const char* active_backend() { return g_backend; }

namespace {
// pick the widest backend available at load time
const bool g_init = [] {
  select_backend("avx2") || select_backend("scalar");
  return true;
}();
}  // namespace

}  // namespace kron::kern
