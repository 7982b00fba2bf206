#include "doctest.h"

#include <cstring>
#include <vector>

#include "kron/kernels.hpp"
#include "kron/rng.hpp"

using namespace kron;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("backend selection") {
  CHECK(kern::select_backend("scalar"));
  CHECK(std::strcmp(kern::active_backend(), "scalar") == 0);
#ifdef KRONPREC_HAVE_AVX2
  if (kern::select_backend("avx2"))
    CHECK(std::strcmp(kern::active_backend(), "avx2") == 0);
#endif
  CHECK_FALSE(kern::select_backend("no-such-backend"));
  kern::select_backend("scalar");
}

#ifdef KRONPREC_HAVE_AVX2
TEST_CASE("scalar and avx2 agree bitwise, including tails") {
  if (!kern::select_backend("avx2")) return;  // no AVX2 at runtime
  // every length 1..67 exercises all tail residues around the 4-wide blocks
  for (std::size_t n = 1; n <= 67; ++n) {
    const std::vector<double> a = random_vec(n, 100 + n);
    const std::vector<double> b = random_vec(n, 200 + n);

    kern::select_backend("avx2");
    const double dot_v = kern::dot(a.data(), b.data(), n);
    const double ss_v = kern::sumsq(a.data(), n);
    std::vector<double> y_v = b;
    kern::axpy(0.37, a.data(), y_v.data(), n);
    std::vector<double> s_v = a;
    kern::scale(1.0 / 3.0, s_v.data(), n);

    kern::select_backend("scalar");
    const double dot_s = kern::dot(a.data(), b.data(), n);
    const double ss_s = kern::sumsq(a.data(), n);
    std::vector<double> y_s = b;
    kern::axpy(0.37, a.data(), y_s.data(), n);
    std::vector<double> s_s = a;
    kern::scale(1.0 / 3.0, s_s.data(), n);

    // bit-for-bit, not approximately
    CHECK(std::memcmp(&dot_v, &dot_s, sizeof(double)) == 0);
    CHECK(std::memcmp(&ss_v, &ss_s, sizeof(double)) == 0);
    CHECK(std::memcmp(y_v.data(), y_s.data(), n * sizeof(double)) == 0);
    CHECK(std::memcmp(s_v.data(), s_s.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("agreement on large vectors") {
  if (!kern::select_backend("avx2")) return;
  const std::size_t n = 4099;  // prime-ish, nontrivial tail
  const std::vector<double> a = random_vec(n, 11);
  const std::vector<double> b = random_vec(n, 12);
  kern::select_backend("avx2");
  const double dv = kern::dot(a.data(), b.data(), n);
  kern::select_backend("scalar");
  const double ds = kern::dot(a.data(), b.data(), n);
  CHECK(std::memcmp(&dv, &ds, sizeof(double)) == 0);
}
#endif

TEST_CASE("scalar kernels compute the right values") {
  kern::select_backend("scalar");
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{4.0, 5.0, 6.0};
  CHECK(kern::dot(a.data(), b.data(), 3) == doctest::Approx(32.0));
  CHECK(kern::sumsq(a.data(), 3) == doctest::Approx(14.0));
  std::vector<double> y = b;
  kern::axpy(2.0, a.data(), y.data(), 3);
  CHECK(y[0] == doctest::Approx(6.0));
  CHECK(y[2] == doctest::Approx(12.0));
  std::vector<double> s = a;
  kern::scale(0.5, s.data(), 3);
  CHECK(s[1] == doctest::Approx(1.0));
}
