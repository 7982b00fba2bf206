#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "kron/clime.hpp"
#include "kron/linalg.hpp"
#include "kron/rng.hpp"
#include "lp_oracle.hpp"

using namespace kron;
using lp_oracle::clime_column_oracle;

namespace {

CorrelationMatrix random_corr(std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g(p + 3, p);
  for (std::size_t i = 0; i < p + 3; ++i)
    for (std::size_t j = 0; j < p; ++j) g(i, j) = rng.normal();
  const Matrix gram = matmul_at_b(g, g);
  std::vector<double> inv(p);
  for (std::size_t i = 0; i < p; ++i) inv[i] = 1.0 / std::sqrt(gram(i, i));
  SymMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j)
      c.set(i, j, gram(i, j) * inv[i] * inv[j]);
  }
  return CorrelationMatrix{c};
}

double col_l1(const Matrix& raw, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < raw.rows(); ++i) s += std::abs(raw(i, j));
  return s;
}

}  // namespace

TEST_CASE("oracle sanity: identity instance has value 1 - lambda") {
  const CorrelationMatrix id{SymMatrix::identity(3)};
  CHECK(clime_column_oracle(id, 0.2, 0) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(clime_column_oracle(id, 0.2, 2) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("identity input gives (1 - lambda) I") {
  const ClimeSolution s = clime(CorrelationMatrix{SymMatrix::identity(4)}, 0.3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(s.theta_sym(i, j) ==
            doctest::Approx(i == j ? 0.7 : 0.0).epsilon(1e-6));
  CHECK_FALSE(s.degenerate);
}

TEST_CASE("lambda >= 1 makes the zero matrix optimal (degenerate)") {
  const ClimeSolution s = clime(random_corr(3, 9), 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(s.theta_sym(i, j) == 0.0);
  CHECK(s.degenerate);
}

TEST_CASE("column objectives match the LP oracle on 2x2, 3x3, 6x6") {
  struct Inst {
    std::size_t p;
    std::uint64_t seed;
    double lambda;
  };
  const Inst instances[] = {{2, 0, 0.1},  {3, 11, 0.05}, {3, 12, 0.1},
                            {3, 13, 0.3}, {6, 21, 0.05}, {6, 22, 0.1},
                            {6, 23, 0.3}};
  for (const Inst& inst : instances) {
    CorrelationMatrix gamma;
    if (inst.p == 2) {
      SymMatrix s(2);
      s.set(0, 0, 1.0);
      s.set(1, 1, 1.0);
      s.set(0, 1, 0.5);
      gamma = CorrelationMatrix{s};
    } else {
      gamma = random_corr(inst.p, inst.seed);
    }
    const ClimeSolution sol = clime(gamma, inst.lambda);
    CHECK(sol.feasibility_residual <= inst.lambda + 1e-6);
    for (std::size_t j = 0; j < inst.p; ++j) {
      const double oracle = clime_column_oracle(gamma, inst.lambda, j);
      CHECK(col_l1(sol.theta_raw, j) == doctest::Approx(oracle).epsilon(1e-4));
    }
  }
}

TEST_CASE("symmetrize_min rules") {
  Matrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 0.3;
  a(1, 0) = 0.6;
  a(1, 1) = 1.0;
  CHECK(symmetrize_min(a)(0, 1) == 0.3);

  Matrix b(2, 2);
  b(0, 0) = 1.0;
  b(0, 1) = -0.5;
  b(1, 0) = 0.5;
  b(1, 1) = 1.0;
  CHECK(symmetrize_min(b)(0, 1) == -0.5);  // tie keeps the (i,j) entry

  SymMatrix s(2);
  s.set(0, 0, 1.0);
  s.set(1, 1, 1.0);
  s.set(0, 1, 0.25);
  CHECK(symmetrize_min(s.matrix()) == s);  // symmetric input unchanged
}

TEST_CASE("invert_to_correlation") {
  ClimeSolution s;
  s.theta_sym = SymMatrix::identity(3);
  CHECK(invert_to_correlation(s) == SymMatrix::identity(3));
  CHECK_FALSE(s.pd_repaired);

  SymMatrix d(2);
  d.set(0, 0, 2.0);
  d.set(1, 1, 4.0);
  ClimeSolution s2;
  s2.theta_sym = d;
  const SymMatrix inv = invert_to_correlation(s2);
  CHECK(inv(0, 0) == doctest::Approx(0.5));
  CHECK(inv(1, 1) == doctest::Approx(0.25));

  // indefinite symmetrized matrix triggers the eigenvalue floor
  SymMatrix bad(2);
  bad.set(0, 0, 1.0);
  bad.set(1, 1, 1.0);
  bad.set(0, 1, 2.0);
  ClimeSolution s3;
  s3.theta_sym = bad;
  const SymMatrix repaired = invert_to_correlation(s3);
  CHECK(s3.pd_repaired);
  CHECK(min_eigenvalue(repaired) > 0.0);
}

TEST_CASE("l1 monotonicity in lambda") {
  const CorrelationMatrix gamma = random_corr(5, 33);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.05, 0.1, 0.2, 0.4}) {
    const ClimeSolution s = clime(gamma, lambda);
    double l1 = 0.0;
    for (std::size_t j = 0; j < 5; ++j) l1 += col_l1(s.theta_raw, j);
    CHECK(l1 <= prev + 1e-6);
    prev = l1;
  }
}

TEST_CASE("feasibility is verified against the original gamma") {
  const CorrelationMatrix gamma = random_corr(6, 55);
  const double lambda = 0.15;
  const ClimeSolution s = clime(gamma, lambda);
  double resid = 0.0;
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t i = 0; i < 6; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 6; ++k) acc += gamma(i, k) * s.theta_raw(k, j);
      resid = std::max(resid, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  CHECK(resid <= lambda + 1e-6);
  CHECK(s.feasibility_residual == doctest::Approx(resid).epsilon(1e-10));
}
