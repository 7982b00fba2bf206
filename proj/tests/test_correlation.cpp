#include "doctest.h"

#include <cmath>

#include "kron/correlation.hpp"
#include "kron/linalg.hpp"
#include "kron/models.hpp"
#include "kron/sampler.hpp"

using namespace kron;

namespace {

DataSet single(Matrix x) {
  std::vector<Matrix> v;
  v.push_back(std::move(x));
  return DataSet::from_matrices(std::move(v));
}

Matrix example_1234() {
  Matrix x(2, 2);
  x(0, 0) = 1.0;
  x(0, 1) = 2.0;
  x(1, 0) = 3.0;
  x(1, 1) = 4.0;
  return x;
}

}  // namespace

TEST_CASE("column correlation hand example") {
  const CorrelationMatrix g = column_correlation(single(example_1234()));
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == 1.0);
  CHECK(g(0, 1) ==
        doctest::Approx(14.0 / (std::sqrt(10.0) * std::sqrt(20.0)))
            .epsilon(1e-12));
  CHECK(g(0, 1) == doctest::Approx(0.98995).epsilon(1e-5));
}

TEST_CASE("orthogonal columns and rows give the identity") {
  CHECK(column_correlation(single(Matrix::identity(2))).entries ==
        SymMatrix::identity(2));
  CHECK(row_correlation(single(Matrix::identity(2))).entries ==
        SymMatrix::identity(2));
}

TEST_CASE("column rescale cancels") {
  Matrix x = example_1234();
  const CorrelationMatrix base = column_correlation(single(x));
  Matrix y = x;
  y(0, 1) *= 7.5;
  y(1, 1) *= 7.5;
  const CorrelationMatrix scaled = column_correlation(single(y));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(scaled(i, j) == doctest::Approx(base(i, j)).epsilon(1e-14));
}

TEST_CASE("row correlation equals column correlation of the transpose") {
  const SymMatrix a = ar1(5, 0.5).covariance;
  const SymMatrix b = ar1(7, 0.3).covariance;
  const DataSet d = sample_matrix_normal(a, b, 3, {17});
  const CorrelationMatrix r = row_correlation(d);
  const CorrelationMatrix c = column_correlation(d.transposed());
  CHECK(r.entries == c.entries);  // bitwise
}

TEST_CASE("duplicated replicate leaves the correlation unchanged") {
  Matrix x = example_1234();
  const CorrelationMatrix one = row_correlation(single(x));
  std::vector<Matrix> two{x, x};
  const CorrelationMatrix dup =
      row_correlation(DataSet::from_matrices(std::move(two)));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(dup(i, j) == doctest::Approx(one(i, j)).epsilon(1e-14));
}

TEST_CASE("weights hand examples") {
  const WeightPair wi = weights(single(Matrix::identity(2)));
  CHECK(wi.w1[0] == doctest::Approx(1.0));
  CHECK(wi.w1[1] == doctest::Approx(1.0));
  CHECK(wi.w2[0] == doctest::Approx(1.0));
  CHECK(wi.frob2_mean == doctest::Approx(2.0));

  const WeightPair w = weights(single(example_1234()));
  CHECK(w.w1[0] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(w.w1[1] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-14));
  CHECK(w.w2[0] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(w.w2[1] == doctest::Approx(std::sqrt(25.0)).epsilon(1e-14));
  CHECK(w.frob2_mean == doctest::Approx(30.0).epsilon(1e-14));

  double s1 = 0.0, s2 = 0.0;
  for (double v : w.w1) s1 += v * v;
  for (double v : w.w2) s2 += v * v;
  CHECK(s1 == doctest::Approx(w.frob2_mean).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(w.frob2_mean).epsilon(1e-12));
}

TEST_CASE("gram identity at n = 1") {
  const DataSet d = sample_matrix_normal(ar1(6, 0.4).covariance,
                                         ar1(5, 0.2).covariance, 1, {23});
  const WeightPair w = weights(d);
  const CorrelationMatrix g = column_correlation(d);
  const Matrix& x = d.matrices[0];
  const Matrix xtx = matmul_at_b(x, x);
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.m; ++j)
      CHECK(g(i, j) ==
            doctest::Approx(xtx(i, j) / (w.w1[i] * w.w1[j])).epsilon(1e-12));
}

TEST_CASE("sample correlations are PSD") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const DataSet d = sample_matrix_normal(ar1(8, 0.6).covariance,
                                           ar1(4, 0.3).covariance, 1, {seed});
    CHECK(min_eigenvalue(column_correlation(d).entries) >= -1e-10);
    CHECK(min_eigenvalue(row_correlation(d).entries) >= -1e-10);
  }
}

TEST_CASE("degenerate columns and rows are hard errors") {
  Matrix x(2, 2);  // second column all zero
  x(0, 0) = 1.0;
  x(1, 0) = 2.0;
  CHECK_THROWS_AS(column_correlation(single(x)), DegenerateColumn);
  CHECK_THROWS_AS(weights(single(x)), DegenerateColumn);
  Matrix y(2, 2);  // second row all zero
  y(0, 0) = 1.0;
  y(0, 1) = 2.0;
  CHECK_THROWS_AS(row_correlation(single(y)), DegenerateRow);
  CHECK_THROWS_AS(weights(single(y)), DegenerateRow);
}

TEST_CASE("concentration trend over f and n") {
  // median max-entry error of the column correlation shrinks at rate ~1/sqrt(f)
  const SymMatrix a = ar1(10, 0.5).covariance;
  auto med_err = [&](std::size_t f, std::size_t n) {
    const SymMatrix b = ar1(f, 0.3).covariance;
    std::vector<double> errs;
    for (std::uint64_t t = 0; t < 21; ++t) {
      const DataSet d = sample_matrix_normal(a, b, n, {555}, t);
      const CorrelationMatrix g = column_correlation(d);
      double e = 0.0;
      for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = i + 1; j < 10; ++j)
          e = std::max(e, std::abs(g(i, j) - a(i, j)));
      errs.push_back(e);
    }
    std::sort(errs.begin(), errs.end());
    return errs[errs.size() / 2];
  };
  const double r_f = med_err(40, 1) / med_err(160, 1);
  CHECK(r_f > 1.2);
  CHECK(r_f < 3.4);
  const double r_n = med_err(40, 1) / med_err(40, 4);
  CHECK(r_n > 1.2);
  CHECK(r_n < 3.4);
}
