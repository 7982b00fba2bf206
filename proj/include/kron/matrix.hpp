#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "kron/errors.hpp"

namespace kron {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return d_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }
  double* row(std::size_t i) { return d_.data() + i * cols_; }
  const double* row(std::size_t i) const { return d_.data() + i * cols_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> d_;
};

/// Symmetric square matrix; set() writes both triangles so storage stays
/// exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim, double fill = 0.0) : m_(dim, dim, fill) {}

  /// Wraps a square matrix, requiring exact symmetry.
  static SymMatrix from_matrix(const Matrix& m, double tol = 0.0) {
    if (m.rows() != m.cols())
      throw DimensionMismatch("SymMatrix: input is not square");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        if (std::abs(m(i, j) - m(j, i)) > tol)
          throw DimensionMismatch("SymMatrix: input is not symmetric");
        s.set(i, j, m(i, j));
      }
    return s;
  }

  /// Wraps a square matrix, averaging the two triangles.
  static SymMatrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols())
      throw DimensionMismatch("SymMatrix: input is not square");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      s.set(i, i, m(i, i));
      for (std::size_t j = 0; j < i; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    }
    return s;
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
  }

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Matrix& matrix() const { return m_; }
  const double* data() const { return m_.data(); }

  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  Matrix m_;
};

/// Undirected edge (i, j), 0-based, i < j.
using Edge = std::pair<std::size_t, std::size_t>;

/// Off-diagonal support of a symmetric matrix at threshold `tol`.
inline std::vector<Edge> edge_set(const SymMatrix& s, double tol = 1e-8) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j)
      if (std::abs(s(i, j)) > tol) e.emplace_back(i, j);
  return e;
}

}  // namespace kron
