#include "kron/clime.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kron/kernels.hpp"
#include "kron/linalg.hpp"

namespace kron {

namespace {

double soft(double u, double lambda) {
  const double a = std::abs(u) - lambda;
  return a > 0.0 ? (u > 0.0 ? a : -a) : 0.0;
}

// y = Gamma x, exploiting symmetry (row k == column k)
void symv(const SymMatrix& g, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t p = g.dim();
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t k = 0; k < p; ++k)
    if (x[k] != 0.0) kern::axpy(x[k], g.matrix().row(k), y.data(), p);
}

}  // namespace

SymMatrix symmetrize_min(const Matrix& raw) {
  if (raw.rows() != raw.cols())
    throw DimensionMismatch("symmetrize_min: input must be square");
  const std::size_t p = raw.rows();
  SymMatrix out(p);
  for (std::size_t i = 0; i < p; ++i) {
    out.set(i, i, raw(i, i));
    for (std::size_t j = i + 1; j < p; ++j) {
      // ties keep the (i, j) entry
      const double v =
          std::abs(raw(i, j)) <= std::abs(raw(j, i)) ? raw(i, j) : raw(j, i);
      out.set(i, j, v);
    }
  }
  return out;
}

ClimeSolution clime(const CorrelationMatrix& gamma, double lambda,
                    const ClimeOptions& opts) {
  if (!(lambda > 0.0)) throw Error("clime: lambda must be positive");
  const std::size_t p = gamma.dim();
  const double mu = 1.01 * std::pow(operator_norm(gamma.entries), 2);

  ClimeSolution sol;
  sol.theta_raw = Matrix(p, p);

  std::vector<double> theta(p), r(p), z(p), zprev(p), u(p), grad(p), gz(p);

  for (std::size_t j = 0; j < p; ++j) {
    std::fill(theta.begin(), theta.end(), 0.0);
    std::fill(z.begin(), z.end(), 0.0);
    std::fill(u.begin(), u.end(), 0.0);
    theta[j] = 1.0;  // diagonal start

    bool ok = false;
    symv(gamma.entries, theta, r);
    r[j] -= 1.0;
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
      zprev = z;
      for (std::size_t k = 0; k < p; ++k)
        z[k] = std::clamp(r[k] + u[k], -lambda, lambda);

      // linearized theta step: prox of |.|_1 after a gradient step on
      // (1/2)||Gamma theta - e_j - z + u||^2
      for (std::size_t k = 0; k < p; ++k) gz[k] = r[k] - z[k] + u[k];
      symv(gamma.entries, gz, grad);
      for (std::size_t k = 0; k < p; ++k)
        theta[k] = soft(theta[k] - grad[k] / mu, 1.0 / mu);

      symv(gamma.entries, theta, r);
      r[j] -= 1.0;

      double primal = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        const double v = r[k] - z[k];
        u[k] += v;
        primal = std::max(primal, std::abs(v));
      }
      for (std::size_t k = 0; k < p; ++k) gz[k] = z[k] - zprev[k];
      symv(gamma.entries, gz, grad);
      double dual = 0.0;
      for (std::size_t k = 0; k < p; ++k) dual = std::max(dual, std::abs(grad[k]));

      if (primal <= opts.dual_tol && dual <= opts.dual_tol) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw NotConverged("clime: column " + std::to_string(j) + " did not converge",
                         0.0);

    for (std::size_t k = 0; k < p; ++k)
      sol.theta_raw(k, j) = std::abs(theta[k]) < opts.zero_tol ? 0.0 : theta[k];

    // feasibility against the original gamma, independent of the inner solver
    for (std::size_t k = 0; k < p; ++k) theta[k] = sol.theta_raw(k, j);
    symv(gamma.entries, theta, r);
    r[j] -= 1.0;
    double feas = 0.0;
    for (std::size_t k = 0; k < p; ++k) feas = std::max(feas, std::abs(r[k]));
    if (feas > lambda + opts.feas_tol)
      throw NotConverged("clime: column " + std::to_string(j) +
                             " infeasible, residual " + std::to_string(feas),
                         feas);
    sol.feasibility_residual = std::max(sol.feasibility_residual, feas);
  }

  sol.theta_sym = symmetrize_min(sol.theta_raw);
  sol.degenerate = true;
  for (std::size_t i = 0; i < p && sol.degenerate; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (sol.theta_sym(i, j) != 0.0) {
        sol.degenerate = false;
        break;
      }
  sol.is_pd = !sol.degenerate && is_pd(sol.theta_sym);
  return sol;
}

SymMatrix invert_to_correlation(ClimeSolution& sol, double pd_eps) {
  SymMatrix t = sol.theta_sym;
  if (!sol.is_pd) {
    const double lmin = min_eigenvalue(t);
    if (lmin <= 0.0) {
      SymMatrix floored(t.dim());
      const double shift = std::abs(lmin) + pd_eps;
      for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          floored.set(i, j, t(i, j) + (i == j ? shift : 0.0));
      t = floored;
      sol.pd_repaired = true;
    }
  }
  return inverse_spd(t);
}

}  // namespace kron
