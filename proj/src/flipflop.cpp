#include "kron/flipflop.hpp"

#include <cmath>
#include <string>

#include "kron/linalg.hpp"

namespace kron {

SymMatrix tilde_A(const DataSet& data, const SymMatrix& b) {
  if (b.dim() != data.f) throw DimensionMismatch("tilde_A: B must be f x f");
  const std::size_t m = data.m;
  Matrix acc(m, m);
  for (const auto& x : data.matrices) {
    const Matrix y = solve_spd(b, x);  // B^-1 X by Cholesky, no explicit inverse
    const Matrix g = matmul_at_b(x, y);
    for (std::size_t i = 0; i < m * m; ++i) acc.data()[i] += g.data()[i];
  }
  const double scale = 1.0 / (static_cast<double>(data.n()) * static_cast<double>(data.f));
  for (std::size_t i = 0; i < m * m; ++i) acc.data()[i] *= scale;
  return SymMatrix::symmetrize(acc);
}

SymMatrix tilde_B(const DataSet& data, const SymMatrix& a) {
  if (a.dim() != data.m) throw DimensionMismatch("tilde_B: A must be m x m");
  return tilde_A(data.transposed(), a);
}

NipffPenalties nipff_penalties(std::size_t f, std::size_t m, std::size_t n,
                               const PenaltyConfig& cfg) {
  NipffPenalties out;
  if (cfg.mode == PenaltyMode::Explicit) {
    if (!(cfg.lambda_A > 0.0) || !(cfg.lambda_B > 0.0))
      throw Error("nipff_penalties: explicit mode requires both penalties > 0");
    out.lambda_A0 = cfg.lambda_A;
    out.lambda_B1 = cfg.lambda_B;
    out.lambda_A1 = cfg.lambda_A;
    return out;
  }
  if (f < 2 || m < 2 || n < 1)
    throw DimensionTooSmall("nipff_penalties: need f, m >= 2 and n >= 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw Error("nipff_penalties: eps must lie in (0, 1)");

  const double logterm = std::log(static_cast<double>(std::max(m, f)));
  const double nn = static_cast<double>(n);
  const double lambda_mn = cfg.c * std::sqrt(logterm / (static_cast<double>(m) * nn));
  const double lambda_fn = cfg.c * std::sqrt(logterm / (static_cast<double>(f) * nn));

  double alpha = cfg.c_A * lambda_mn;
  constexpr double cap = 1.0 / 3.0 - 1e-9;
  if (alpha >= cap) {
    alpha = cap;
    out.clamped = true;
  }
  out.lambda_A0 = std::max(2.0 * alpha / (cfg.eps * (1.0 - alpha)), cfg.min_penalty);
  out.lambda_B1 = std::max(cfg.c2 * (lambda_fn + lambda_mn), cfg.min_penalty);
  out.lambda_A1 = std::max(cfg.c3 * (lambda_mn + lambda_fn), cfg.min_penalty);
  return out;
}

namespace {

SymMatrix reweighted(const SymMatrix& rho, const std::vector<double>& w) {
  return diag_congruence(w, rho);
}

std::vector<double> sqrt_diag(const SymMatrix& s, const char* step) {
  std::vector<double> w(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (!(s(i, i) > 0.0))
      throw NotPD(std::string(step) + ": nonpositive diagonal in sample covariance");
    w[i] = std::sqrt(s(i, i));
  }
  return w;
}

SymMatrix congruence_step(const DataSet& data, const SymMatrix& plug, double lambda,
                          bool a_side, const GlassoOptions& gopts,
                          CorrelationMatrix* gamma_out, PrecisionEstimate* prec_out,
                          double edge_tol, const char* step) {
  SymMatrix cov = a_side ? tilde_A(data, plug) : tilde_B(data, plug);
  const std::vector<double> w = sqrt_diag(cov, step);
  const CorrelationMatrix gamma = to_correlation(cov);
  if (gamma_out) *gamma_out = gamma;
  GlassoSolution sol = glasso(gamma, lambda, gopts);
  if (prec_out) {
    // (W rho W)^-1 = W^-1 theta W^-1; positive diagonal congruence keeps the
    // zero pattern
    std::vector<double> winv(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) winv[i] = 1.0 / w[i];
    PrecisionEstimate p;
    p.entries = diag_congruence(winv, sol.theta.entries);
    p.edges = edge_set(p.entries, edge_tol);
    *prec_out = std::move(p);
  }
  return reweighted(sol.w, w);
}

}  // namespace

SymMatrix nipff_step2(const DataSet& data, const SymMatrix& b1, double lambda_B1,
                      const GlassoOptions& gopts, CorrelationMatrix* gamma_out,
                      PrecisionEstimate* prec_out, double edge_tol) {
  return congruence_step(data, b1, lambda_B1, true, gopts, gamma_out, prec_out,
                         edge_tol, "nipff step 2");
}

SymMatrix nipff_step3(const DataSet& data, const SymMatrix& a1, double lambda_A1,
                      const GlassoOptions& gopts, CorrelationMatrix* gamma_out,
                      PrecisionEstimate* prec_out, double edge_tol) {
  return congruence_step(data, a1, lambda_A1, false, gopts, gamma_out, prec_out,
                         edge_tol, "nipff step 3");
}

NipffResult nipff(const DataSet& data, const PenaltyConfig& cfg,
                  const GlassoOptions& gopts) {
  if (data.f > data.m) {
    // step 1 labels the smaller side as rows; transpose and swap roles back
    NipffResult r = nipff(data.transposed(), cfg, gopts);
    NipffResult out;
    out.b1 = std::move(r.b1);  // step-1 estimate stays attached to the small side
    out.a_star = std::move(r.b_star);
    out.b_star = std::move(r.a_star);
    out.a_prec = std::move(r.b_prec);
    out.b_prec = std::move(r.a_prec);
    out.gamma_a = std::move(r.gamma_b);
    out.gamma_b = std::move(r.gamma_a);
    out.penalties_used = r.penalties_used;
    out.transposed = true;
    return out;
  }

  NipffResult out;
  out.penalties_used = nipff_penalties(data.f, data.m, data.n(), cfg);

  // step 1: penalized row correlation, recombined into a covariance estimate
  const CorrelationMatrix gamma_b0 = row_correlation(data);
  GlassoSolution step1 = glasso(gamma_b0, out.penalties_used.lambda_A0, gopts);
  const WeightPair w = weights(data);
  SymMatrix b1 = diag_congruence(w.w2, step1.w);
  {
    const double inv_m = 1.0 / static_cast<double>(data.m);
    SymMatrix scaled(b1.dim());
    for (std::size_t i = 0; i < b1.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j) scaled.set(i, j, b1(i, j) * inv_m);
    b1 = std::move(scaled);
  }

  // step 2
  out.a_star = nipff_step2(data, b1, out.penalties_used.lambda_B1, gopts,
                           &out.gamma_a, &out.a_prec, gopts.edge_tol);
  // step 3
  out.b_star = nipff_step3(data, out.a_star, out.penalties_used.lambda_A1, gopts,
                           &out.gamma_b, &out.b_prec, gopts.edge_tol);
  out.b1 = std::move(b1);
  return out;
}

}  // namespace kron
