#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kron/dataset.hpp"
#include "kron/gemini.hpp"
#include "kron/matrix.hpp"
#include "kron/models.hpp"
#include "kron/rng.hpp"

namespace kron {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t p = 0;                 // node count
  std::size_t true_edge_count = 0;   // |E|

  double fpr() const;  // FP / (p(p-1)/2 - |E|), 0 when the denominator is 0
  double fnr() const;  // FN / |E|, 0 when |E| = 0
  double mcc() const;  // (TP*TN - FP*FN)/sqrt(...), 0 on any empty marginal
};

/// Edge lists are 0-based, i < j, deduplicated; InvalidEdge otherwise.
ConfusionCounts confusion(const std::vector<Edge>& est,
                          const std::vector<Edge>& truth, std::size_t p);

enum class NormKind { Operator, Frobenius };

/// ||est - truth|| / ||truth||; ZeroTruth when ||truth|| = 0.
double relative_error(const SymMatrix& est, const SymMatrix& truth, NormKind norm);

struct Diagnostics {
  double total_correlation = 0.0;  // mean squared off-diagonal correlation
  double frob_over_trace = 0.0;
  double l1_off = 0.0;   // |rho(S)^-1|_{1,off}
  double l1_full = 0.0;  // |rho(S)^-1|_1
  double stable_rank = 0.0;
  double condition_number = 0.0;
};

Diagnostics diagnostics(const SymMatrix& s);

struct CurvePoint {
  double penalty = 0.0;
  double fpr = 0.0, fnr = 0.0, mcc = 0.0;
  double rel_err_op = 0.0, rel_err_frob = 0.0;
};

struct TrialPoint {
  std::size_t trial = 0;
  CurvePoint point;
};

struct EvalReport {
  std::string label;
  std::vector<CurvePoint> rows;        // per-penalty averages over used trials
  std::vector<TrialPoint> trial_rows;  // one row per trial x penalty
  std::size_t trials_used = 0;
  std::size_t trials_failed = 0;
  std::vector<std::string> failures;   // "trial <k>: <cause>"
};

enum class Method { Gemini, Nipff };

struct RocConfig {
  std::vector<double> grid_a;  // penalties for the A-side (Omega-hat) curves
  std::vector<double> grid_b;  // penalties for the B-side (Pi-hat) curves
  std::size_t trials = 1;
  Method method = Method::Gemini;
  RngSpec rng;
  std::size_t threads = 1;
  double edge_tol = 1e-8;
  GlassoOptions gopts;
};

struct RocResult {
  // Gemini: one curve per side. Nipff: three curves per side, one per
  // selection criterion (edge error / operator error / Frobenius error),
  // plus the stage-1/2 baseline Pi-hat curve used to pick B1.
  std::vector<EvalReport> a_curves;
  std::vector<EvalReport> b_curves;
  EvalReport b_baseline;  // populated for nipff only

  const EvalReport& a_report() const { return a_curves.front(); }
  const EvalReport& b_report() const { return b_curves.front(); }
};

/// Per trial: sample n replicates from truth_A (x) truth_B, sweep the grids,
/// and record edge-recovery and relative-error metrics for the *-normalized
/// precision estimates of both sides. Failed trials are excluded from the
/// averages and reported. Trials are independent; with threads > 1 they run
/// concurrently but the reduction order (ascending trial index) is fixed, so
/// results do not depend on the thread count.
RocResult roc_sweep(const GroundTruth& truth_A, const GroundTruth& truth_B,
                    std::size_t n, const RocConfig& cfg);

enum class CvSide { A, B };

struct CvResult {
  double chosen = 0.0;
  std::vector<double> grid;
  std::vector<double> scores;  // mean score per grid point
  std::size_t folds_used = 0;
  std::size_t folds_skipped = 0;
  std::vector<std::string> warnings;
};

/// K-fold likelihood cross-validation of the glasso penalty. Side A
/// partitions the rows of every replicate (scores a column correlation built
/// from the held-out rows); side B partitions the columns. Each trial draws a
/// fresh random fold assignment. Score per fold: tr(Theta_lambda Gamma_V) -
/// log|Theta_lambda|. Returns the argmin penalty; ties break to the smaller
/// penalty. Degenerate folds are skipped with a warning.
CvResult cross_validate(const DataSet& data, const std::vector<double>& grid,
                        std::size_t folds = 10, std::size_t trials = 10,
                        CvSide side = CvSide::A, RngSpec rng = {},
                        const GlassoOptions& gopts = {});

}  // namespace kron
