#include "kron/gemini.hpp"

#include <cmath>

#include "kron/evaluation.hpp"
#include "kron/linalg.hpp"

namespace kron {

namespace {

constexpr double kConcentrationCap = 1.0 / 3.0 - 1e-9;

double shrink_rate(double x, double eps) { return (2.0 * x / (1.0 - x)) / eps; }

}  // namespace

PenaltyPair select_penalties(std::size_t f, std::size_t m, std::size_t n,
                             const PenaltyConfig& cfg) {
  PenaltyPair out;
  if (cfg.mode == PenaltyMode::Cv)
    throw Error("select_penalties: cv mode needs data; use gemini_estimate");
  if (cfg.mode == PenaltyMode::Explicit) {
    if (!(cfg.lambda_A > 0.0) || !(cfg.lambda_B > 0.0))
      throw Error("select_penalties: explicit mode requires both penalties > 0");
    out.lambda_A = cfg.lambda_A;
    out.lambda_B = cfg.lambda_B;
    return out;
  }
  if (f < 2 || m < 2 || n < 1)
    throw DimensionTooSmall("select_penalties: need f, m >= 2 and n >= 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw Error("select_penalties: eps must lie in (0, 1)");

  const double tau0 =
      cfg.c * std::sqrt(std::log(static_cast<double>(std::max(m, f))) /
                        static_cast<double>(n));
  double alpha = cfg.c_A * tau0 / std::sqrt(static_cast<double>(m));
  double beta = cfg.c_B * tau0 / std::sqrt(static_cast<double>(f));
  if (alpha >= kConcentrationCap || beta >= kConcentrationCap) {
    out.clamped = true;
    alpha = std::min(alpha, kConcentrationCap);
    beta = std::min(beta, kConcentrationCap);
  }
  out.lambda_A = std::max(shrink_rate(alpha, cfg.eps), cfg.min_penalty);
  out.lambda_B = std::max(shrink_rate(beta, cfg.eps), cfg.min_penalty);
  return out;
}

namespace {

struct SolvedSide {
  SymMatrix rho;
  PrecisionEstimate prec;
  bool pd_repaired = false;
};

SolvedSide solve_side(const CorrelationMatrix& gamma, double lambda, SolverKind solver,
                      const GlassoOptions& gopts, const ClimeOptions& copts) {
  SolvedSide out;
  if (solver == SolverKind::Glasso) {
    GlassoSolution sol = glasso(gamma, lambda, gopts);
    out.rho = sol.w;
    out.prec = std::move(sol.theta);
  } else {
    ClimeSolution sol = clime(gamma, lambda, copts);
    out.rho = invert_to_correlation(sol, copts.pd_eps);
    out.pd_repaired = sol.pd_repaired;
    out.prec = PrecisionEstimate::from(sol.theta_sym, gopts.edge_tol);
  }
  return out;
}

}  // namespace

GeminiFit gemini_estimate(const DataSet& data, const PenaltyConfig& cfg,
                          SolverKind solver, const GlassoOptions& gopts,
                          const ClimeOptions& copts) {
  GeminiFit fit;
  fit.solver_used = solver;
  if (cfg.mode == PenaltyMode::Cv) {
    if (cfg.grid.empty()) throw Error("gemini_estimate: cv mode needs a grid");
    // side A partitions rows and scores a column correlation, so it selects
    // the penalty of the A-side program (lambda_B), and vice versa
    fit.penalties.lambda_B =
        cross_validate(data, cfg.grid, cfg.cv_folds, cfg.cv_trials, CvSide::A,
                       RngSpec{cfg.cv_seed}, gopts)
            .chosen;
    fit.penalties.lambda_A =
        cross_validate(data, cfg.grid, cfg.cv_folds, cfg.cv_trials, CvSide::B,
                       RngSpec{cfg.cv_seed}, gopts)
            .chosen;
  } else {
    fit.penalties = select_penalties(data.f, data.m, data.n(), cfg);
  }
  fit.weights = weights(data);

  const CorrelationMatrix gamma_a = column_correlation(data);
  const CorrelationMatrix gamma_b = row_correlation(data);

  SolvedSide a = solve_side(gamma_a, fit.penalties.lambda_B, solver, gopts, copts);
  SolvedSide b = solve_side(gamma_b, fit.penalties.lambda_A, solver, gopts, copts);
  fit.a_rho = std::move(a.rho);
  fit.a_prec = std::move(a.prec);
  fit.b_rho = std::move(b.rho);
  fit.b_prec = std::move(b.prec);
  fit.clime_pd_repaired = a.pd_repaired || b.pd_repaired;
  return fit;
}

KroneckerEstimate assemble_kronecker(const GeminiFit& fit, std::size_t guard) {
  if (!(fit.weights.frob2_mean > 0.0))
    throw Error("assemble_kronecker: frob2_mean must be positive");
  KroneckerEstimate out;
  // the 1/frob2_mean factor lives in the A side by convention; only the
  // product is identifiable
  SymMatrix wa = diag_congruence(fit.weights.w1, fit.a_rho);
  SymMatrix a_factor(wa.dim());
  const double inv_frob = 1.0 / fit.weights.frob2_mean;
  for (std::size_t i = 0; i < wa.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) a_factor.set(i, j, wa(i, j) * inv_frob);
  out.a_factor = std::move(a_factor);
  out.b_factor = diag_congruence(fit.weights.w2, fit.b_rho);

  const std::size_t total = out.a_factor.dim() * out.b_factor.dim();
  if (total <= guard) {
    out.full = kronecker(out.a_factor, out.b_factor, guard);
    out.full_inv =
        kronecker(inverse_spd(out.a_factor), inverse_spd(out.b_factor), guard);
  }
  return out;
}

StarNormalized normalize_star(const GeminiFit& fit, double edge_tol) {
  const std::size_t m = fit.a_rho.dim();
  SymMatrix wa = diag_congruence(fit.weights.w1, fit.a_rho);
  double tr = 0.0;
  for (std::size_t i = 0; i < m; ++i) tr += wa(i, i);

  StarNormalized out;
  SymMatrix a_star(m);
  const double sa = static_cast<double>(m) / tr;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) a_star.set(i, j, wa(i, j) * sa);

  SymMatrix wb = diag_congruence(fit.weights.w2, fit.b_rho);
  // keep the product equal to assemble_kronecker: a_star (x) b_star =
  // wa (x) wb / frob2_mean
  const double sb = tr / (static_cast<double>(m) * fit.weights.frob2_mean);
  SymMatrix b_star(wb.dim());
  for (std::size_t i = 0; i < wb.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) b_star.set(i, j, wb(i, j) * sb);

  out.a_star_prec = PrecisionEstimate::from(inverse_spd(a_star), edge_tol);
  out.b_star_prec = PrecisionEstimate::from(inverse_spd(b_star), edge_tol);
  out.a_star = std::move(a_star);
  out.b_star = std::move(b_star);
  return out;
}

}  // namespace kron
