#pragma once

#include <cstddef>
#include <vector>

#include "kron/correlation.hpp"
#include "kron/matrix.hpp"

namespace kron {

/// Symmetric positive definite estimate plus its off-diagonal support.
struct PrecisionEstimate {
  SymMatrix entries;
  std::vector<Edge> edges;
  std::size_t dim() const { return entries.dim(); }

  static PrecisionEstimate from(SymMatrix m, double edge_tol = 1e-8) {
    PrecisionEstimate p;
    p.edges = edge_set(m, edge_tol);
    p.entries = std::move(m);
    return p;
  }
};

struct GlassoOptions {
  double kkt_tol = 1e-6;
  double conv_tol = 1e-6;       // mean |dW offdiag| per sweep, relative to mean |gamma_ij|
  std::size_t max_sweeps = 500;
  // The column subproblem is solved inexactly: a few coordinate-descent
  // passes per outer sweep keep the objective monotone while letting the
  // outer iteration carry the convergence burden (full-precision inner
  // solves spend most of their updates on digits the next sweep discards).
  std::size_t max_inner = 8;    // coordinate-descent passes per column per sweep
  double inner_tol = 1e-10;     // max coordinate change in the column subproblem
  double edge_tol = 1e-8;
  bool check_monotone = true;   // assert nonincreasing objective per sweep
  bool throw_on_fail = true;    // NotConverged vs. returning the best iterate
};

struct GlassoSolution {
  PrecisionEstimate theta;  // the precision-form minimizer
  SymMatrix w;              // theta^-1, the estimated correlation
  double objective = 0.0;
  std::size_t iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

/// Minimizes tr(Gamma Theta) - log|Theta| + lambda |Theta|_{1,off} over
/// Theta > 0 by block coordinate descent on the columns of Theta (each block
/// is a lasso-type quadratic solved by coordinate descent). The primal
/// objective is nonincreasing across sweeps and off-diagonal zeros are exact.
///
/// lambda == 0 requires positive definite input and returns Gamma^-1.
/// An optional warm start must be symmetric positive definite.
GlassoSolution glasso(const CorrelationMatrix& gamma, double lambda,
                      const GlassoOptions& opts = {},
                      const SymMatrix* warm_start = nullptr);

/// tr(Gamma Theta) - log|Theta| + lambda |Theta|_{1,off}; throws NotPD.
double glasso_objective(const CorrelationMatrix& gamma, const SymMatrix& theta,
                        double lambda);

/// Max-norm violation of the stationarity system
///   Gamma - Theta^-1 + lambda * sign(Theta_off) = 0
/// with the usual subgradient slack on zero entries.
double kkt_residual(const CorrelationMatrix& gamma, const SymMatrix& theta,
                    double lambda);

}  // namespace kron
