#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kron/clime.hpp"
#include "kron/correlation.hpp"
#include "kron/dataset.hpp"
#include "kron/glasso.hpp"

namespace kron {

enum class PenaltyMode { Explicit, Theory, Cv };
enum class SolverKind { Glasso, Clime };

struct PenaltyConfig {
  PenaltyMode mode = PenaltyMode::Theory;
  double lambda_A = 0.0;  // penalty for the B-side program (row correlation)
  double lambda_B = 0.0;  // penalty for the A-side program (column correlation)
  double c = 0.5;         // theory-mode rate constant (stands in for 2CK^2)
  double eps = 0.5;       // theory-mode 1/eps inflation, in (0,1)
  double c_A = 1.0;       // plug-in constants for alpha_n / beta_n
  double c_B = 1.0;
  double c2 = 1.0;        // flip-flop step-2 multiplier on lambda_{f,n}+lambda_{m,n}
  double c3 = 1.0;        // flip-flop step-3 multiplier
  std::vector<double> grid;  // ascending penalties for cv/roc modes
  double min_penalty = 1e-6;
  std::size_t cv_folds = 10;
  std::size_t cv_trials = 10;
  std::uint64_t cv_seed = 0;  // fold-assignment stream
};

struct PenaltyPair {
  double lambda_A = 0.0;
  double lambda_B = 0.0;
  bool clamped = false;  // the alpha_n, beta_n < 1/3 precondition was enforced
};

/// Theory-mode penalties: tau0 = c*sqrt(log(max(m,f))/n), alpha = c_A*tau0/
/// sqrt(m), beta = c_B*tau0/sqrt(f) (both clamped below 1/3), then
/// lambda_B = (2 beta/(1-beta))/eps and lambda_A = (2 alpha/(1-alpha))/eps,
/// floored at cfg.min_penalty.
PenaltyPair select_penalties(std::size_t f, std::size_t m, std::size_t n,
                             const PenaltyConfig& cfg);

struct GeminiFit {
  SymMatrix a_rho;  // m x m penalized correlation estimate
  SymMatrix b_rho;  // f x f
  PrecisionEstimate a_prec;
  PrecisionEstimate b_prec;
  WeightPair weights;
  SolverKind solver_used = SolverKind::Glasso;
  PenaltyPair penalties;
  bool clime_pd_repaired = false;
};

/// Baseline pipeline: column/row sample correlations, penalized inverse
/// estimation with the chosen solver (lambda_B on the A side, lambda_A on the
/// B side), and the sample weights.
GeminiFit gemini_estimate(const DataSet& data, const PenaltyConfig& cfg,
                          SolverKind solver = SolverKind::Glasso,
                          const GlassoOptions& gopts = {},
                          const ClimeOptions& copts = {});

struct KroneckerEstimate {
  SymMatrix a_factor;  // W1 A_rho W1 / frob2_mean
  SymMatrix b_factor;  // W2 B_rho W2
  std::optional<SymMatrix> full;      // explicit Kronecker product when small
  std::optional<SymMatrix> full_inv;  // its inverse, from the factor inverses
};

/// (W1 A_rho W1) (x) (W2 B_rho W2) / frob2_mean in factor form; the explicit
/// product and its inverse are materialized when m*f <= guard.
KroneckerEstimate assemble_kronecker(const GeminiFit& fit, std::size_t guard = 4096);

struct StarNormalized {
  SymMatrix a_star;  // tr(a_star) = m
  SymMatrix b_star;  // scaled so a_star (x) b_star matches assemble_kronecker
  PrecisionEstimate a_star_prec;
  PrecisionEstimate b_star_prec;
};

StarNormalized normalize_star(const GeminiFit& fit, double edge_tol = 1e-8);

}  // namespace kron
