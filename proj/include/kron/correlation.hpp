#pragma once

#include <vector>

#include "kron/dataset.hpp"
#include "kron/matrix.hpp"

namespace kron {

/// Symmetric matrix with exact unit diagonal, entries in [-1, 1] up to
/// round-off.
struct CorrelationMatrix {
  SymMatrix entries;
  std::size_t dim() const { return entries.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// w1[i] = sqrt((1/n) sum_t ||x(t)^i||^2), w2[j] likewise over rows,
/// frob2_mean = (1/n) sum_t ||X(t)||_F^2 = sum_i w1[i]^2 = sum_j w2[j]^2.
struct WeightPair {
  std::vector<double> w1;  // length m
  std::vector<double> w2;  // length f
  double frob2_mean = 0.0;
};

/// Pooled column correlation (m x m): Gamma_ij = sum_t <x(t)^i, x(t)^j> /
/// sqrt(sum_t ||x(t)^i||^2 * sum_t ||x(t)^j||^2). Throws DegenerateColumn
/// when some pooled column norm is zero.
CorrelationMatrix column_correlation(const DataSet& data);

/// Row analogue (f x f); equals column_correlation of the transposed data.
CorrelationMatrix row_correlation(const DataSet& data);

WeightPair weights(const DataSet& data);

/// Pooled gram matrix sum_t X(t)^T X(t) (m x m).
SymMatrix pooled_gram_columns(const DataSet& data);
/// Pooled gram matrix sum_t X(t) X(t)^T (f x f).
SymMatrix pooled_gram_rows(const DataSet& data);

/// Correlation obtained by normalizing an SPD covariance-form matrix.
CorrelationMatrix to_correlation(const SymMatrix& cov);

}  // namespace kron
