#pragma once

#include <vector>

#include "kron/matrix.hpp"

namespace kron {

struct EigSym {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector for values[k]
};

EigSym eig_sym(const SymMatrix& s);

/// Unique PSD square root via symmetric eigendecomposition, eigenvalues
/// clamped at 0 after the tolerance check. tol_eig < 0 selects the default
/// 1e-8 * ||S||_2. Throws NotPSD when the smallest eigenvalue < -tol_eig.
SymMatrix sym_sqrt(const SymMatrix& s, double tol_eig = -1.0);

/// log|S| via Cholesky; throws NotPD.
double logdet_spd(const SymMatrix& s);

/// S^-1 via Cholesky; throws NotPD.
SymMatrix inverse_spd(const SymMatrix& s);

/// Solve S * X = B via Cholesky; throws NotPD.
Matrix solve_spd(const SymMatrix& s, const Matrix& b);

bool is_pd(const SymMatrix& s);
double min_eigenvalue(const SymMatrix& s);

/// Largest |eigenvalue| (= operator norm for symmetric input).
double operator_norm(const SymMatrix& s);
double frobenius_norm(const Matrix& m);

/// C = A * B, kernel-backed.
Matrix matmul(const Matrix& a, const Matrix& b);
/// A^T * B without forming the transpose.
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
/// D * S * D for diagonal D given as a vector.
SymMatrix diag_congruence(const std::vector<double>& d, const SymMatrix& s);

/// Exact Kronecker product under the column-stacking vec convention:
/// (A (x) B)[(i*f)+k][(j*f)+l] = A[i][j] * B[k][l].
/// Throws DimensionGuard when dim(A)*dim(B) > guard.
SymMatrix kronecker(const SymMatrix& a, const SymMatrix& b, std::size_t guard = 4096);

}  // namespace kron
