#include "kron/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "kron/flipflop.hpp"
#include "kron/linalg.hpp"
#include "kron/sampler.hpp"

namespace kron {

double ConfusionCounts::fpr() const {
  const std::size_t denom = fp + tn;
  return denom == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(denom);
}

double ConfusionCounts::fnr() const {
  const std::size_t denom = tp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(fn) / static_cast<double>(denom);
}

double ConfusionCounts::mcc() const {
  const double a = static_cast<double>(tp + fp);
  const double b = static_cast<double>(tp + fn);
  const double c = static_cast<double>(tn + fp);
  const double d = static_cast<double>(tn + fn);
  if (a == 0.0 || b == 0.0 || c == 0.0 || d == 0.0) return 0.0;
  const double num = static_cast<double>(tp) * static_cast<double>(tn) -
                     static_cast<double>(fp) * static_cast<double>(fn);
  return num / std::sqrt(a * b * c * d);
}

namespace {

std::vector<Edge> checked_edges(const std::vector<Edge>& e, std::size_t p,
                                const char* which) {
  std::vector<Edge> s = e;
  std::sort(s.begin(), s.end());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].first >= s[k].second || s[k].second >= p)
      throw InvalidEdge(std::string("confusion: malformed ") + which + " edge");
    if (k > 0 && s[k] == s[k - 1])
      throw InvalidEdge(std::string("confusion: duplicate ") + which + " edge");
  }
  return s;
}

}  // namespace

ConfusionCounts confusion(const std::vector<Edge>& est,
                          const std::vector<Edge>& truth, std::size_t p) {
  const std::vector<Edge> e = checked_edges(est, p, "estimated");
  const std::vector<Edge> t = checked_edges(truth, p, "true");

  ConfusionCounts c;
  c.p = p;
  c.true_edge_count = t.size();
  std::size_t i = 0, j = 0;
  while (i < e.size() && j < t.size()) {
    if (e[i] == t[j]) {
      ++c.tp;
      ++i;
      ++j;
    } else if (e[i] < t[j]) {
      ++c.fp;
      ++i;
    } else {
      ++c.fn;
      ++j;
    }
  }
  c.fp += e.size() - i;
  c.fn += t.size() - j;
  c.tn = p * (p - 1) / 2 - t.size() - c.fp;
  return c;
}

double relative_error(const SymMatrix& est, const SymMatrix& truth, NormKind norm) {
  if (est.dim() != truth.dim())
    throw DimensionMismatch("relative_error: dimension mismatch");
  SymMatrix diff(est.dim());
  for (std::size_t i = 0; i < est.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) diff.set(i, j, est(i, j) - truth(i, j));
  const double denom = norm == NormKind::Operator ? operator_norm(truth)
                                                  : frobenius_norm(truth.matrix());
  if (denom == 0.0) throw ZeroTruth("relative_error: ||truth|| = 0");
  const double num = norm == NormKind::Operator ? operator_norm(diff)
                                                : frobenius_norm(diff.matrix());
  return num / denom;
}

Diagnostics diagnostics(const SymMatrix& s) {
  const std::size_t m = s.dim();
  std::vector<double> dinv(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(s(i, i) > 0.0)) throw NotPD("diagnostics: nonpositive diagonal");
    dinv[i] = 1.0 / std::sqrt(s(i, i));
  }
  const SymMatrix corr = diag_congruence(dinv, s);

  Diagnostics d;
  if (m >= 2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) acc += corr(i, j) * corr(i, j);
    d.total_correlation = acc / (static_cast<double>(m) * (m - 1) / 2.0);
  }

  double tr = 0.0;
  for (std::size_t i = 0; i < m; ++i) tr += s(i, i);
  d.frob_over_trace = frobenius_norm(s.matrix()) / tr;

  const SymMatrix prec = inverse_spd(corr);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double v = std::abs(prec(i, j));
      d.l1_full += v;
      if (i != j) d.l1_off += v;
    }

  const EigSym eig = eig_sym(s);
  const double lo = eig.values.front(), hi = eig.values.back();
  if (!(lo > 0.0)) throw NotPD("diagnostics: input is not positive definite");
  const double fr = frobenius_norm(s.matrix());
  d.stable_rank = fr * fr / (hi * hi);
  d.condition_number = hi / lo;
  return d;
}

namespace {

SymMatrix scaled_congruence(const std::vector<double>& w, const SymMatrix& s,
                            double scale) {
  SymMatrix out = diag_congruence(w, s);
  if (scale != 1.0) {
    SymMatrix t(out.dim());
    for (std::size_t i = 0; i < out.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j) t.set(i, j, out(i, j) * scale);
    out = std::move(t);
  }
  return out;
}

SymMatrix scale_sym(const SymMatrix& s, double c) {
  SymMatrix t(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) t.set(i, j, s(i, j) * c);
  return t;
}

struct SweepPoint {
  CurvePoint cp;
  SymMatrix rho;  // estimated correlation; kept only when requested
};

/// Glasso path over an ascending grid (solved largest-to-smallest with warm
/// starts). The *-normalized precision at each point is
/// prec_scale * diag(1/weight) Theta diag(1/weight).
std::vector<SweepPoint> sweep_path(const CorrelationMatrix& gamma,
                                   const std::vector<double>& weight,
                                   double prec_scale,
                                   const std::vector<double>& grid,
                                   const SymMatrix& truth_prec_star,
                                   const std::vector<Edge>& truth_edges,
                                   const GlassoOptions& gopts, double edge_tol,
                                   bool keep_rho) {
  std::vector<double> winv(weight.size());
  for (std::size_t i = 0; i < weight.size(); ++i) winv[i] = 1.0 / weight[i];

  std::vector<SweepPoint> out(grid.size());
  SymMatrix warm;
  bool have_warm = false;
  for (std::size_t k = grid.size(); k-- > 0;) {
    GlassoSolution sol =
        glasso(gamma, grid[k], gopts, have_warm ? &warm : nullptr);
    warm = sol.theta.entries;
    have_warm = true;

    const SymMatrix prec =
        scaled_congruence(winv, sol.theta.entries, prec_scale);
    const ConfusionCounts cc =
        confusion(edge_set(prec, edge_tol), truth_edges, prec.dim());
    CurvePoint cp;
    cp.penalty = grid[k];
    cp.fpr = cc.fpr();
    cp.fnr = cc.fnr();
    cp.mcc = cc.mcc();
    cp.rel_err_op = relative_error(prec, truth_prec_star, NormKind::Operator);
    cp.rel_err_frob = relative_error(prec, truth_prec_star, NormKind::Frobenius);
    out[k].cp = cp;
    if (keep_rho) out[k].rho = sol.w;
  }
  return out;
}

std::vector<double> sqrt_diag_or_throw(const SymMatrix& s, const char* where) {
  std::vector<double> w(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (!(s(i, i) > 0.0))
      throw NotPD(std::string(where) + ": nonpositive diagonal");
    w[i] = std::sqrt(s(i, i));
  }
  return w;
}

std::size_t argmin_by(const std::vector<SweepPoint>& pts, int criterion) {
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const CurvePoint& c = pts[k].cp;
    const double v = criterion == 0 ? c.fnr + c.fpr
                     : criterion == 1 ? c.rel_err_op
                                      : c.rel_err_frob;
    if (v < best_v) {  // strict: ties resolve to the smaller penalty
      best_v = v;
      best = k;
    }
  }
  return best;
}

struct TrialOutput {
  bool ok = false;
  std::string error;
  std::vector<std::vector<CurvePoint>> a_curves;  // [criterion][grid point]
  std::vector<std::vector<CurvePoint>> b_curves;
  std::vector<CurvePoint> b_baseline;  // nipff stage 1-2 sweep
};

std::vector<CurvePoint> strip(const std::vector<SweepPoint>& pts) {
  std::vector<CurvePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.cp);
  return out;
}

TrialOutput run_trial(std::size_t trial, const GroundTruth& truth_A,
                      const GroundTruth& truth_B, std::size_t n,
                      const RocConfig& cfg, const SymMatrix& omega_star,
                      const SymMatrix& pi_star) {
  TrialOutput out;
  try {
    const DataSet data = sample_matrix_normal(truth_A.covariance,
                                              truth_B.covariance, n, cfg.rng,
                                              trial);
    const WeightPair w = weights(data);
    const double m = static_cast<double>(data.m);

    if (cfg.method == Method::Gemini) {
      const CorrelationMatrix gamma_a = column_correlation(data);
      const CorrelationMatrix gamma_b = row_correlation(data);
      // A_* = (m / frob2_mean) W1 A_rho W1, so Omega_* picks up the inverse
      // factor; B_* = W2 B_rho W2 / m likewise.
      out.a_curves.push_back(strip(
          sweep_path(gamma_a, w.w1, w.frob2_mean / m, cfg.grid_a, omega_star,
                     truth_A.edges, cfg.gopts, cfg.edge_tol, false)));
      out.b_curves.push_back(strip(
          sweep_path(gamma_b, w.w2, m, cfg.grid_b, pi_star, truth_B.edges,
                     cfg.gopts, cfg.edge_tol, false)));
      out.ok = true;
      return out;
    }

    // nipff staged protocol: the stage-1/2 baseline sweep provides the B1
    // candidates, three selection criteria pick the inputs of the later steps
    const CorrelationMatrix gamma_b = row_correlation(data);
    const std::vector<SweepPoint> stage12 =
        sweep_path(gamma_b, w.w2, m, cfg.grid_b, pi_star, truth_B.edges,
                   cfg.gopts, cfg.edge_tol, true);
    out.b_baseline = strip(stage12);

    std::vector<std::vector<SweepPoint>> step2(3);
    std::vector<std::vector<double>> wt1(3);
    for (int i = 0; i < 3; ++i) {
      const std::size_t nu = argmin_by(stage12, i);
      const SymMatrix b1 = scale_sym(
          diag_congruence(w.w2, stage12[nu].rho), 1.0 / m);
      const SymMatrix cov = tilde_A(data, b1);
      wt1[i] = sqrt_diag_or_throw(cov, "nipff step 2");
      step2[i] = sweep_path(to_correlation(cov), wt1[i], 1.0, cfg.grid_a,
                            omega_star, truth_A.edges, cfg.gopts, cfg.edge_tol,
                            true);
      out.a_curves.push_back(strip(step2[i]));
    }

    for (int j = 0; j < 3; ++j) {
      // joint argmin over criterion-curve x penalty; ties resolve to the
      // smaller penalty, then the lower criterion index
      std::size_t bi = 0, bk = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cfg.grid_a.size(); ++k)
        for (std::size_t i = 0; i < 3; ++i) {
          const CurvePoint& c = step2[i][k].cp;
          const double v = j == 0 ? c.fnr + c.fpr
                           : j == 1 ? c.rel_err_op
                                    : c.rel_err_frob;
          if (v < best) {
            best = v;
            bi = i;
            bk = k;
          }
        }
      const SymMatrix a1 = diag_congruence(wt1[bi], step2[bi][bk].rho);
      const SymMatrix cov = tilde_B(data, a1);
      const std::vector<double> wt2 =
          sqrt_diag_or_throw(cov, "nipff step 3");
      out.b_curves.push_back(strip(
          sweep_path(to_correlation(cov), wt2, 1.0, cfg.grid_b, pi_star,
                     truth_B.edges, cfg.gopts, cfg.edge_tol, false)));
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

EvalReport reduce_curve(const std::vector<TrialOutput>& trials,
                        const std::vector<double>& grid, bool b_side,
                        std::size_t curve, std::string label,
                        bool baseline = false) {
  EvalReport rep;
  rep.label = std::move(label);
  rep.rows.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) rep.rows[k].penalty = grid[k];

  for (std::size_t t = 0; t < trials.size(); ++t) {
    const TrialOutput& tr = trials[t];
    if (!tr.ok) continue;
    const std::vector<CurvePoint>& pts =
        baseline ? tr.b_baseline : (b_side ? tr.b_curves : tr.a_curves)[curve];
    for (std::size_t k = 0; k < grid.size(); ++k) {
      rep.rows[k].fpr += pts[k].fpr;
      rep.rows[k].fnr += pts[k].fnr;
      rep.rows[k].mcc += pts[k].mcc;
      rep.rows[k].rel_err_op += pts[k].rel_err_op;
      rep.rows[k].rel_err_frob += pts[k].rel_err_frob;
      rep.trial_rows.push_back({t, pts[k]});
    }
    ++rep.trials_used;
  }
  for (std::size_t t = 0; t < trials.size(); ++t)
    if (!trials[t].ok) {
      ++rep.trials_failed;
      rep.failures.push_back("trial " + std::to_string(t) + ": " +
                             trials[t].error);
    }
  if (rep.trials_used > 0) {
    const double inv = 1.0 / static_cast<double>(rep.trials_used);
    for (auto& r : rep.rows) {
      r.fpr *= inv;
      r.fnr *= inv;
      r.mcc *= inv;
      r.rel_err_op *= inv;
      r.rel_err_frob *= inv;
    }
  }
  return rep;
}

}  // namespace

RocResult roc_sweep(const GroundTruth& truth_A, const GroundTruth& truth_B,
                    std::size_t n, const RocConfig& cfg) {
  if (cfg.trials < 1) throw Error("roc_sweep: trials must be >= 1");
  if (cfg.grid_a.empty() || cfg.grid_b.empty())
    throw Error("roc_sweep: grids must be nonempty");
  if (!std::is_sorted(cfg.grid_a.begin(), cfg.grid_a.end()) ||
      !std::is_sorted(cfg.grid_b.begin(), cfg.grid_b.end()))
    throw Error("roc_sweep: grids must be ascending");

  // *-normalized truths: Omega_* = (tr(A)/m) A^-1, Pi_* = (m/tr(A)) B^-1
  const std::size_t m = truth_A.covariance.dim();
  double tr_a = 0.0;
  for (std::size_t i = 0; i < m; ++i) tr_a += truth_A.covariance(i, i);
  const double s = tr_a / static_cast<double>(m);
  const SymMatrix omega_star = scale_sym(truth_A.precision, s);
  const SymMatrix pi_star = scale_sym(truth_B.precision, 1.0 / s);

  std::vector<TrialOutput> trials(cfg.trials);
  const std::size_t nthreads = std::max<std::size_t>(1, cfg.threads);
  if (nthreads == 1 || cfg.trials == 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t)
      trials[t] = run_trial(t, truth_A, truth_B, n, cfg, omega_star, pi_star);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t tid = 0; tid < nthreads; ++tid)
      pool.emplace_back([&, tid] {
        for (std::size_t t = tid; t < cfg.trials; t += nthreads)
          trials[t] =
              run_trial(t, truth_A, truth_B, n, cfg, omega_star, pi_star);
      });
    for (auto& th : pool) th.join();
  }

  RocResult res;
  const std::size_t ncurves = cfg.method == Method::Gemini ? 1 : 3;
  static const char* kTag[3] = {"edge", "operator", "frobenius"};
  for (std::size_t c = 0; c < ncurves; ++c) {
    std::string suffix = ncurves == 1 ? "" : std::string("_") + kTag[c];
    res.a_curves.push_back(
        reduce_curve(trials, cfg.grid_a, false, c, "omega" + suffix));
    res.b_curves.push_back(
        reduce_curve(trials, cfg.grid_b, true, c, "pi" + suffix));
  }
  if (cfg.method == Method::Nipff)
    res.b_baseline =
        reduce_curve(trials, cfg.grid_b, true, 0, "pi_baseline", true);
  return res;
}

CvResult cross_validate(const DataSet& data, const std::vector<double>& grid,
                        std::size_t folds, std::size_t trials, CvSide side,
                        RngSpec rng, const GlassoOptions& gopts) {
  if (grid.empty()) throw Error("cross_validate: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error("cross_validate: grid must be ascending");
  if (folds < 2) throw FoldTooSmall("cross_validate: need folds >= 2");
  if (trials < 1) throw Error("cross_validate: trials must be >= 1");

  const DataSet work = side == CvSide::A ? data : data.transposed();
  if (work.f < folds)
    throw FoldTooSmall("cross_validate: fewer rows than folds");

  CvResult res;
  res.grid = grid;
  res.scores.assign(grid.size(), 0.0);
  std::vector<std::size_t> counts(grid.size(), 0);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    // fresh uniform permutation per trial, split into near-equal chunks
    Rng r = Rng::substream(rng, trial, 0);
    std::vector<std::size_t> perm(work.f);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i-- > 1;)
      std::swap(perm[i], perm[r.below(i + 1)]);

    for (std::size_t fold = 0; fold < folds; ++fold) {
      const std::size_t lo = fold * work.f / folds;
      const std::size_t hi = (fold + 1) * work.f / folds;
      std::vector<std::size_t> val(perm.begin() + lo, perm.begin() + hi);
      std::vector<std::size_t> train;
      train.insert(train.end(), perm.begin(), perm.begin() + lo);
      train.insert(train.end(), perm.begin() + hi, perm.end());
      if (val.empty() || train.empty())
        throw FoldTooSmall("cross_validate: empty fold");

      CorrelationMatrix gamma_t, gamma_v;
      try {
        gamma_t = column_correlation(work.row_subset(train));
        gamma_v = column_correlation(work.row_subset(val));
      } catch (const std::exception& e) {
        ++res.folds_skipped;
        res.warnings.push_back("trial " + std::to_string(trial) + " fold " +
                               std::to_string(fold) + " skipped: " + e.what());
        continue;
      }

      SymMatrix warm;
      bool have_warm = false;
      bool failed = false;
      std::vector<double> fold_scores(grid.size());
      for (std::size_t k = grid.size(); k-- > 0 && !failed;) {
        try {
          GlassoSolution sol =
              glasso(gamma_t, grid[k], gopts, have_warm ? &warm : nullptr);
          warm = sol.theta.entries;
          have_warm = true;
          double tr = 0.0;
          const std::size_t p = warm.dim();
          for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
              tr += sol.theta.entries(i, j) * gamma_v(i, j);
          fold_scores[k] = tr - logdet_spd(sol.theta.entries);
        } catch (const std::exception& e) {
          failed = true;
          ++res.folds_skipped;
          res.warnings.push_back("trial " + std::to_string(trial) + " fold " +
                                 std::to_string(fold) + " skipped: " + e.what());
        }
      }
      if (failed) continue;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        res.scores[k] += fold_scores[k];
        ++counts[k];
      }
      ++res.folds_used;
    }
  }

  if (res.folds_used == 0)
    throw Error("cross_validate: every fold was skipped");
  for (std::size_t k = 0; k < grid.size(); ++k) res.scores[k] /= counts[k];

  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (res.scores[k] < res.scores[best]) best = k;  // ties -> smaller penalty
  res.chosen = grid[best];
  return res;
}

}  // namespace kron
