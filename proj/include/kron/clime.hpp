#pragma once

#include <vector>

#include "kron/correlation.hpp"
#include "kron/matrix.hpp"

namespace kron {

struct ClimeOptions {
  double dual_tol = 1e-7;       // stopping residual for the column solver
  double feas_tol = 1e-6;       // post-hoc feasibility slack
  std::size_t max_iters = 50000;
  double pd_eps = 1e-6;         // eigenvalue floor used by invert_to_correlation
  double zero_tol = 1e-10;      // entries below this are snapped to 0
};

struct ClimeSolution {
  Matrix theta_raw;        // columnwise solutions, possibly asymmetric
  SymMatrix theta_sym;     // min-magnitude symmetrization
  double feasibility_residual = 0.0;  // ||Gamma theta_raw - I||_max
  bool is_pd = false;
  bool degenerate = false;  // theta_sym is exactly zero (lambda >= 1 regime)
  bool pd_repaired = false;  // invert_to_correlation had to floor eigenvalues
};

/// Columnwise constrained l1 minimization
///   min |theta^j|_1  s.t.  ||Gamma theta^j - e_j||_inf <= lambda
/// solved per column by linearized ADMM, followed by min-magnitude
/// symmetrization (ties keep the (i,j) entry). Feasibility is re-checked
/// against the original Gamma; NotConverged reports the failing column.
ClimeSolution clime(const CorrelationMatrix& gamma, double lambda,
                    const ClimeOptions& opts = {});

/// Entrywise min-magnitude symmetrization; ties take the (i,j) entry.
SymMatrix symmetrize_min(const Matrix& raw);

/// theta_sym^-1. A non-PD theta_sym is floored to
/// theta_sym + (|lambda_min| + pd_eps) I and `sol.pd_repaired` is set.
SymMatrix invert_to_correlation(ClimeSolution& sol, double pd_eps = 1e-6);

}  // namespace kron
