#pragma once

#include <vector>

#include "kron/matrix.hpp"

namespace kron {

/// n replicate matrices, each f x m.
struct DataSet {
  std::size_t f = 0;  // rows per replicate
  std::size_t m = 0;  // columns per replicate
  std::vector<Matrix> matrices;

  std::size_t n() const { return matrices.size(); }

  static DataSet from_matrices(std::vector<Matrix> ms) {
    if (ms.empty()) throw DimensionMismatch("DataSet: need n >= 1 replicates");
    DataSet d;
    d.f = ms.front().rows();
    d.m = ms.front().cols();
    for (const auto& x : ms)
      if (x.rows() != d.f || x.cols() != d.m)
        throw DimensionMismatch("DataSet: replicates disagree on dimensions");
    d.matrices = std::move(ms);
    return d;
  }

  DataSet transposed() const {
    std::vector<Matrix> t;
    t.reserve(matrices.size());
    for (const auto& x : matrices) t.push_back(x.transposed());
    return from_matrices(std::move(t));
  }

  /// Restriction of every replicate to a subset of rows (CV row folds).
  DataSet row_subset(const std::vector<std::size_t>& rows) const {
    std::vector<Matrix> out;
    out.reserve(matrices.size());
    for (const auto& x : matrices) {
      Matrix s(rows.size(), m);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) s(i, j) = x(rows[i], j);
      out.push_back(std::move(s));
    }
    return from_matrices(std::move(out));
  }

  DataSet col_subset(const std::vector<std::size_t>& cols) const {
    std::vector<Matrix> out;
    out.reserve(matrices.size());
    for (const auto& x : matrices) {
      Matrix s(f, cols.size());
      for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = x(i, cols[j]);
      out.push_back(std::move(s));
    }
    return from_matrices(std::move(out));
  }
};

}  // namespace kron
