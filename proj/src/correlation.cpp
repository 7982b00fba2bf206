#include "kron/correlation.hpp"

#include <cmath>
#include <string>

#include "kron/kernels.hpp"

namespace kron {

namespace {

// sum_t X(t)^T X(t) accumulated in fixed order: replicate ascending, then row
// by row as rank-one updates. Products commute, so the result is exactly
// symmetric.
Matrix gram_cols(const DataSet& data) {
  const std::size_t m = data.m;
  Matrix g(m, m);
  for (const auto& x : data.matrices)
    for (std::size_t r = 0; r < data.f; ++r) {
      const double* row = x.row(r);
      for (std::size_t i = 0; i < m; ++i)
        if (row[i] != 0.0) kern::axpy(row[i], row, g.row(i), m);
    }
  return g;
}

CorrelationMatrix normalize_gram(const Matrix& g, bool row_side) {
  const std::size_t p = g.rows();
  std::vector<double> inv_norm(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (!(g(i, i) > 0.0)) {
      const std::string msg = std::string(row_side ? "row " : "column ") +
                              std::to_string(i) + " has zero pooled norm";
      if (row_side) throw DegenerateRow(msg);
      throw DegenerateColumn(msg);
    }
    inv_norm[i] = 1.0 / std::sqrt(g(i, i));
  }
  SymMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j) c.set(i, j, g(i, j) * inv_norm[i] * inv_norm[j]);
  }
  return CorrelationMatrix{c};
}

}  // namespace

SymMatrix pooled_gram_columns(const DataSet& data) {
  return SymMatrix::from_matrix(gram_cols(data));
}

// defined as the column gram of the transposed data so the row/column paths
// agree bit-for-bit
SymMatrix pooled_gram_rows(const DataSet& data) {
  return SymMatrix::from_matrix(gram_cols(data.transposed()));
}

CorrelationMatrix column_correlation(const DataSet& data) {
  return normalize_gram(gram_cols(data), false);
}

CorrelationMatrix row_correlation(const DataSet& data) {
  return normalize_gram(pooled_gram_rows(data).matrix(), true);
}

WeightPair weights(const DataSet& data) {
  const double inv_n = 1.0 / static_cast<double>(data.n());
  WeightPair w;
  w.w1.resize(data.m);
  w.w2.resize(data.f);

  const Matrix gc = gram_cols(data);
  for (std::size_t i = 0; i < data.m; ++i) {
    if (!(gc(i, i) > 0.0))
      throw DegenerateColumn("column " + std::to_string(i) + " has zero pooled norm");
    w.w1[i] = std::sqrt(gc(i, i) * inv_n);
  }
  const SymMatrix gr = pooled_gram_rows(data);
  for (std::size_t j = 0; j < data.f; ++j) {
    if (!(gr(j, j) > 0.0))
      throw DegenerateRow("row " + std::to_string(j) + " has zero pooled norm");
    w.w2[j] = std::sqrt(gr(j, j) * inv_n);
  }
  double frob2 = 0.0;
  for (const auto& x : data.matrices) frob2 += kern::sumsq(x.data(), x.size());
  w.frob2_mean = frob2 * inv_n;
  return w;
}

CorrelationMatrix to_correlation(const SymMatrix& cov) {
  const std::size_t p = cov.dim();
  std::vector<double> inv_norm(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (!(cov(i, i) > 0.0))
      throw NotPD("to_correlation: nonpositive diagonal at " + std::to_string(i));
    inv_norm[i] = 1.0 / std::sqrt(cov(i, i));
  }
  SymMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j) c.set(i, j, cov(i, j) * inv_norm[i] * inv_norm[j]);
  }
  return CorrelationMatrix{c};
}

}  // namespace kron
