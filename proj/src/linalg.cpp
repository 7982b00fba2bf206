#include "kron/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "kron/kernels.hpp"

namespace kron {

namespace {

using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMat>;

EMap map(const Matrix& m) { return EMap(m.data(), m.rows(), m.cols()); }
EMap map(const SymMatrix& s) { return map(s.matrix()); }

}  // namespace

EigSym eig_sym(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<EMat> es(map(s));
  if (es.info() != Eigen::Success)
    throw Error("eig_sym: eigendecomposition failed");
  EigSym out;
  const std::size_t n = s.dim();
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.vectors(i, j) = es.eigenvectors()(i, j);
  return out;
}

SymMatrix sym_sqrt(const SymMatrix& s, double tol_eig) {
  EigSym es = eig_sym(s);
  const std::size_t n = s.dim();
  const double norm2 = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  if (tol_eig < 0.0) tol_eig = 1e-8 * norm2;
  if (es.values.front() < -tol_eig)
    throw NotPSD("sym_sqrt: smallest eigenvalue " + std::to_string(es.values.front()) +
                 " below -" + std::to_string(tol_eig));
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = std::sqrt(std::max(es.values[k], 0.0));
  // R = V diag(r) V^T; split r across both dot-product factors
  Matrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      scaled(i, k) = es.vectors(i, k) * std::sqrt(r[k]);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = kern::dot(scaled.row(i), scaled.row(j), n);
      out(i, j) = v;
      out(j, i) = v;
    }
  return SymMatrix::from_matrix(out);
}

namespace {
Eigen::LLT<EMat> llt_of(const SymMatrix& s, const char* who) {
  Eigen::LLT<EMat> llt(map(s));
  if (llt.info() != Eigen::Success)
    throw NotPD(std::string(who) + ": matrix is not positive definite");
  return llt;
}
}  // namespace

double logdet_spd(const SymMatrix& s) {
  auto llt = llt_of(s, "logdet_spd");
  double ld = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) ld += std::log(llt.matrixL()(i, i));
  return 2.0 * ld;
}

SymMatrix inverse_spd(const SymMatrix& s) {
  auto llt = llt_of(s, "inverse_spd");
  EMat inv = llt.solve(EMat::Identity(s.dim(), s.dim()));
  Matrix out(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) out(i, j) = inv(i, j);
  return SymMatrix::symmetrize(out);
}

Matrix solve_spd(const SymMatrix& s, const Matrix& b) {
  if (s.dim() != b.rows()) throw DimensionMismatch("solve_spd: dimension mismatch");
  auto llt = llt_of(s, "solve_spd");
  EMat x = llt.solve(map(b));
  Matrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = x(i, j);
  return out;
}

bool is_pd(const SymMatrix& s) {
  Eigen::LLT<EMat> llt(map(s));
  return llt.info() == Eigen::Success;
}

double min_eigenvalue(const SymMatrix& s) { return eig_sym(s).values.front(); }

double operator_norm(const SymMatrix& s) {
  EigSym es = eig_sym(s);
  return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

double frobenius_norm(const Matrix& m) {
  return std::sqrt(kern::sumsq(m.data(), m.size()));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      kern::axpy(a(i, k), b.row(k), c.row(i), b.cols());
  return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("matmul_at_b: dimension mismatch");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i)
      kern::axpy(a(k, i), b.row(k), c.row(i), b.cols());
  return c;
}

SymMatrix diag_congruence(const std::vector<double>& d, const SymMatrix& s) {
  if (d.size() != s.dim()) throw DimensionMismatch("diag_congruence: dimension mismatch");
  SymMatrix out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, d[i] * s(i, j) * d[j]);
  return out;
}

SymMatrix kronecker(const SymMatrix& a, const SymMatrix& b, std::size_t guard) {
  const std::size_t m = a.dim(), f = b.dim();
  if (m * f > guard)
    throw DimensionGuard("kronecker: " + std::to_string(m * f) + " exceeds guard " +
                         std::to_string(guard));
  SymMatrix out(m * f);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < f; ++k)
        for (std::size_t l = 0; l < f; ++l)
          out.set(i * f + k, j * f + l, a(i, j) * b(k, l));
  return out;
}

}  // namespace kron
