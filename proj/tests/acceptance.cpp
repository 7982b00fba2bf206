// Acceptance suite: one test case per release criterion, each printing a
// single [PASS]/[FAIL] line with any sub-check failures listed underneath.
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "kron/clime.hpp"
#include "kron/evaluation.hpp"
#include "kron/flipflop.hpp"
#include "kron/glasso.hpp"
#include "kron/io.hpp"
#include "kron/linalg.hpp"
#include "kron/models.hpp"
#include "kron/sampler.hpp"
#include "lp_oracle.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace kron;

namespace {

struct Criterion {
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol))
      failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                         std::to_string(want) + " +- " + std::to_string(tol));
  }
  bool ok() const { return failures.empty(); }
};

void report(int number, const char* desc, const Criterion& c) {
  std::cout << (c.ok() ? "[PASS]" : "[FAIL]") << " criterion " << number
            << " - " << desc << "\n";
  for (const std::string& f : c.failures) std::cout << "    " << f << "\n";
  std::cout.flush();
  CHECK_MESSAGE(c.ok(), "criterion ", number);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

CorrelationMatrix random_corr(std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g(p + 3, p);
  for (std::size_t i = 0; i < p + 3; ++i)
    for (std::size_t j = 0; j < p; ++j) g(i, j) = rng.normal();
  const Matrix gram = matmul_at_b(g, g);
  std::vector<double> inv(p);
  for (std::size_t i = 0; i < p; ++i) inv[i] = 1.0 / std::sqrt(gram(i, i));
  SymMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j)
      c.set(i, j, gram(i, j) * inv[i] * inv[j]);
  }
  return CorrelationMatrix{c};
}

}  // namespace

TEST_CASE("criterion_1") {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();

  const Diagnostics d5 = diagnostics(ar1(400, 0.5).covariance);
  c.expect_near(d5.frob_over_trace, 0.0645, 0.001, "ar1(400, 0.5) frob/trace");
  c.expect_near(d5.l1_off, 532.0, 1e-6, "ar1(400, 0.5) l1 off-diagonal");
  c.expect_near(d5.l1_full, 1198.0, 1e-6, "ar1(400, 0.5) l1 full");

  const Diagnostics d7 = diagnostics(ar1(400, 0.7).covariance);
  c.expect_near(d7.frob_over_trace, 0.0853, 0.001, "ar1(400, 0.7) frob/trace");
  c.expect_near(d7.l1_off, 1095.294, 1.0, "ar1(400, 0.7) l1 off-diagonal");
  c.expect_near(d7.l1_full, 2262.0, 1.0, "ar1(400, 0.7) l1 full");

  c.expect(elapsed_s(t0) < 1.0, "diagnostics must finish in under a second");
  report(1, "ar1 diagnostics reproduce the reference values", c);
}

TEST_CASE("criterion_2") {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();

  // 2x2 closed form
  SymMatrix g2 = SymMatrix::identity(2);
  g2.set(0, 1, 0.5);
  const GlassoSolution s2 = glasso(CorrelationMatrix{g2}, 0.1);
  c.expect_near(s2.w(0, 1), 0.4, 1e-8, "2x2 shrunk covariance entry");
  c.expect_near(s2.theta.entries(0, 1), -0.4 / (1.0 - 0.16), 1e-6,
                "2x2 precision entry");

  // 100 random PD correlation instances across sizes and penalties
  const std::size_t sizes[] = {5, 20, 50};
  const double lambdas[] = {0.01, 0.1, 0.3};
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    const std::size_t p = sizes[seed % 3];
    const double lambda = lambdas[(seed / 3) % 3];
    const CorrelationMatrix gamma = random_corr(p, 5000 + seed);
    const GlassoSolution s = glasso(gamma, lambda);
    ++checked;
    if (!s.converged) {
      c.expect(false, "instance " + std::to_string(seed) + " did not converge");
      continue;
    }
    if (s.kkt_residual > 1e-6)
      c.expect(false, "instance " + std::to_string(seed) + " kkt residual " +
                          std::to_string(s.kkt_residual));
    double diag_err = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      diag_err = std::max(diag_err, std::abs(s.w(i, i) - gamma(i, i)));
    if (diag_err > 1e-8)
      c.expect(false, "instance " + std::to_string(seed) + " diagonal error " +
                          std::to_string(diag_err));
    if (!(min_eigenvalue(s.theta.entries) > 0.0))
      c.expect(false, "instance " + std::to_string(seed) + " theta not PD");
  }
  c.expect(checked == 100, "expected 100 instances");
  c.expect(elapsed_s(t0) < 60.0, "glasso batch must finish in under a minute");
  report(2, "glasso meets its optimality certificates on 100 instances", c);
}

TEST_CASE("criterion_3") {
  Criterion c;

  struct Inst {
    std::size_t p;
    std::uint64_t seed;
    double lambda;
  };
  const Inst instances[] = {{3, 11, 0.05}, {3, 12, 0.1}, {3, 13, 0.3},
                            {6, 21, 0.05}, {6, 22, 0.1}, {6, 23, 0.3}};
  for (const Inst& inst : instances) {
    const CorrelationMatrix gamma = random_corr(inst.p, inst.seed);
    const ClimeSolution sol = clime(gamma, inst.lambda);
    if (sol.feasibility_residual > inst.lambda + 1e-6)
      c.expect(false, "p=" + std::to_string(inst.p) + " lambda=" +
                          std::to_string(inst.lambda) + " infeasible");
    for (std::size_t j = 0; j < inst.p; ++j) {
      const double oracle =
          lp_oracle::clime_column_oracle(gamma, inst.lambda, j);
      double l1 = 0.0;
      for (std::size_t i = 0; i < inst.p; ++i)
        l1 += std::abs(sol.theta_raw(i, j));
      if (!(std::abs(l1 - oracle) <= 1e-4 * std::max(1.0, std::abs(oracle))))
        c.expect(false, "p=" + std::to_string(inst.p) + " col " +
                            std::to_string(j) + ": l1 " + std::to_string(l1) +
                            " vs oracle " + std::to_string(oracle));
    }
    // min-magnitude symmetrization
    for (std::size_t i = 0; i < inst.p; ++i)
      for (std::size_t j = 0; j < inst.p; ++j) {
        const double want =
            std::abs(sol.theta_raw(i, j)) <= std::abs(sol.theta_raw(j, i))
                ? sol.theta_raw(i, j)
                : sol.theta_raw(j, i);
        if (sol.theta_sym(i, j) != want &&
            std::abs(sol.theta_raw(i, j)) != std::abs(sol.theta_raw(j, i)))
          c.expect(false, "symmetrization rule violated at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  report(3, "clime matches the simplex oracle within 1e-4", c);
}

TEST_CASE("criterion_4") {
  Criterion c;
  const SymMatrix a = ar1(3, 0.6).covariance;
  Rng model_rng(404);
  const SymMatrix b = random_concentration(3, 2, 0.3, 0.5, model_rng).covariance;
  const SymMatrix truth = kronecker(a, b);

  const std::size_t reps = 100000;
  Matrix acc(9, 9);
  for (std::uint64_t t = 0; t < reps; ++t) {
    const DataSet d = sample_matrix_normal(a, b, 1, {777}, t);
    const Matrix& x = d.matrices[0];
    double v[9];
    for (std::size_t i = 0; i < 3; ++i)       // column index of X
      for (std::size_t k = 0; k < 3; ++k)     // row index of X
        v[i * 3 + k] = x(k, i);               // column-stacking vec
    for (std::size_t p = 0; p < 9; ++p)
      for (std::size_t q = 0; q < 9; ++q) acc(p, q) += v[p] * v[q];
  }
  double worst = 0.0;
  for (std::size_t p = 0; p < 9; ++p)
    for (std::size_t q = 0; q < 9; ++q) {
      const double mean = acc(p, q) / reps;
      const double var =
          truth(p, p) * truth(q, q) + truth(p, q) * truth(p, q);
      const double se = std::sqrt(var / reps);
      worst = std::max(worst, std::abs(mean - truth(p, q)) / se);
      if (std::abs(mean - truth(p, q)) > 3.0 * se)
        c.expect(false, "vec-covariance entry (" + std::to_string(p) + "," +
                            std::to_string(q) + ") off by " +
                            std::to_string(std::abs(mean - truth(p, q)) / se) +
                            " standard errors");
    }

  // dyadic scale ambiguity: (4A, B/4) must sample bit-identically
  SymMatrix a4(3), bq(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      a4.set(i, j, 4.0 * a(i, j));
      bq.set(i, j, b(i, j) / 4.0);
    }
  const DataSet d1 = sample_matrix_normal(a, b, 2, {888});
  const DataSet d2 = sample_matrix_normal(a4, bq, 2, {888});
  for (std::size_t t = 0; t < 2; ++t)
    c.expect(d1.matrices[t] == d2.matrices[t],
             "scale-ambiguous pair sampled differently");
  report(4, "sampler matches the Kronecker vec-covariance", c);
}

TEST_CASE("criterion_5") {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t m = 100;
  const SymMatrix a = ar1(m, 0.5).covariance;

  auto med_err = [&](std::size_t f, std::size_t n) {
    const SymMatrix b = SymMatrix::identity(f);
    std::vector<double> errs;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const DataSet d = sample_matrix_normal(a, b, n, {4242}, t);
      const CorrelationMatrix g = column_correlation(d);
      double e = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          e = std::max(e, std::abs(g(i, j) - a(i, j)));
      errs.push_back(e);
    }
    std::sort(errs.begin(), errs.end());
    return errs[errs.size() / 2];
  };

  const double r_f = med_err(40, 1) / med_err(160, 1);
  if (!(r_f > 1.4 && r_f < 2.9))
    c.expect(false, "f 40 -> 160 error ratio " + std::to_string(r_f) +
                        " outside [1.4, 2.9]");
  const double r_n = med_err(40, 1) / med_err(40, 4);
  if (!(r_n > 1.4 && r_n < 2.9))
    c.expect(false, "n 1 -> 4 error ratio " + std::to_string(r_n) +
                        " outside [1.4, 2.9]");
  c.expect(elapsed_s(t0) < 300.0, "trend study must finish in under 5 minutes");
  report(5, "correlation error shrinks at the root-sample-size rate", c);
}

namespace {

// shared large-model setup for criteria 6 and 7
GroundTruth big_a() { return ar1(400, 0.5); }
GroundTruth big_b() {
  Rng rng = Rng::substream({606}, 1, 0);
  return random_concentration(80, 80, 0.1, 0.3, rng);
}

std::vector<double> sweep_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 36; ++k) g.push_back(0.02 * k);
  return g;
}

double best_frob_for_trial(const EvalReport& rep, std::size_t trial) {
  double best = std::numeric_limits<double>::infinity();
  for (const TrialPoint& tp : rep.trial_rows)
    if (tp.trial == trial) best = std::min(best, tp.point.rel_err_frob);
  return best;
}

}  // namespace

TEST_CASE("criterion_6") {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const GroundTruth ta = big_a();
  const GroundTruth tb = big_b();

  RocConfig cfg;
  cfg.grid_a = cfg.grid_b = sweep_grid();
  cfg.trials = 20;
  cfg.method = Method::Gemini;
  cfg.rng = {2024};

  const RocResult r1 = roc_sweep(ta, tb, 1, cfg);
  const EvalReport& omega = r1.a_report();
  c.expect(omega.trials_used == 20, "all 20 trials must be used");

  std::size_t arg_edge = 0, arg_mcc = 0, arg_frob = 0;
  for (std::size_t k = 1; k < omega.rows.size(); ++k) {
    const CurvePoint& p = omega.rows[k];
    if (p.fpr + p.fnr < omega.rows[arg_edge].fpr + omega.rows[arg_edge].fnr)
      arg_edge = k;
    if (p.mcc > omega.rows[arg_mcc].mcc) arg_mcc = k;
    if (p.rel_err_frob < omega.rows[arg_frob].rel_err_frob) arg_frob = k;
  }
  const std::size_t last = omega.rows.size() - 1;
  c.expect(arg_edge > 0 && arg_edge < last,
           "fpr+fnr minimum must be interior, got index " +
               std::to_string(arg_edge));
  c.expect(arg_mcc > 0 && arg_mcc < last,
           "mcc maximum must be interior, got index " + std::to_string(arg_mcc));
  c.expect(omega.rows[arg_mcc].mcc >= 0.5,
           "best mcc " + std::to_string(omega.rows[arg_mcc].mcc) + " below 0.5");
  c.expect(omega.rows[arg_frob].rel_err_frob <= omega.rows[last].rel_err_frob,
           "tuned Frobenius error must beat the fully shrunk estimate");

  // more replicates help, trial by trial
  const RocResult r3 = roc_sweep(ta, tb, 3, cfg);
  std::size_t improved = 0;
  for (std::size_t t = 0; t < 20; ++t)
    if (best_frob_for_trial(r3.a_report(), t) <
        best_frob_for_trial(omega, t))
      ++improved;
  c.expect(improved >= 16, "n = 3 improved only " + std::to_string(improved) +
                               "/20 trials");
  c.expect(elapsed_s(t0) < 1800.0, "sweep must finish in under 30 minutes");
  report(6, "large-model penalty sweep recovers the row graph", c);
}

TEST_CASE("criterion_7") {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();

  // plug-in unbiasedness at modest size
  {
    const SymMatrix a = ar1(3, 0.6).covariance;
    const SymMatrix b = ar1(4, 0.4).covariance;
    const std::size_t reps = 200;
    Matrix mean(3, 3), m2(3, 3);
    for (std::uint64_t t = 0; t < reps; ++t) {
      const DataSet d = sample_matrix_normal(a, b, 1, {9090}, t);
      const SymMatrix ta = tilde_A(d, b);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          mean(i, j) += ta(i, j);
          m2(i, j) += ta(i, j) * ta(i, j);
        }
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const double mu = mean(i, j) / reps;
        const double var = m2(i, j) / reps - mu * mu;
        const double se = std::sqrt(var / reps);
        if (std::abs(mu - a(i, j)) > 3.0 * se + 1e-12)
          c.expect(false, "coupled covariance biased at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
  }

  const GroundTruth ta = big_a();
  const GroundTruth tb = big_b();

  // the step-1 plug-in must not degrade the column correlation: compare the
  // re-correlated coupled estimate against the baseline per trial
  PenaltyConfig cfg;
  cfg.mode = PenaltyMode::Theory;
  std::vector<double> base_err, step2_err;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const DataSet d =
        sample_matrix_normal(ta.covariance, tb.covariance, 1, {7171}, t);
    const NipffPenalties pen = nipff_penalties(d.f, d.m, 1, cfg);
    const GlassoSolution step1 =
        glasso(row_correlation(d), pen.lambda_A0);
    const WeightPair w = weights(d);
    SymMatrix b1 = diag_congruence(w.w2, step1.w);
    SymMatrix b1s(b1.dim());
    for (std::size_t i = 0; i < b1.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j) b1s.set(i, j, b1(i, j) / 400.0);
    const CorrelationMatrix gamma2 = to_correlation(tilde_A(d, b1s));
    const CorrelationMatrix gamma0 = column_correlation(d);
    double e2 = 0.0, e0 = 0.0;
    for (std::size_t i = 0; i < 400; ++i)
      for (std::size_t j = i + 1; j < 400; ++j) {
        e2 = std::max(e2, std::abs(gamma2(i, j) - ta.covariance(i, j)));
        e0 = std::max(e0, std::abs(gamma0(i, j) - ta.covariance(i, j)));
      }
    step2_err.push_back(e2);
    base_err.push_back(e0);
  }
  std::sort(step2_err.begin(), step2_err.end());
  std::sort(base_err.begin(), base_err.end());
  const double med2 = step2_err[25];
  const double med0 = base_err[25];
  c.expect(med2 <= 1.25 * med0,
           "coupled correlation error " + std::to_string(med2) +
               " exceeds 1.25x the baseline " + std::to_string(med0));

  // the full three-step pipeline completes at scale with theory penalties
  const DataSet big =
      sample_matrix_normal(ta.covariance, tb.covariance, 1, {7171}, 50);
  const NipffResult full = nipff(big, cfg);
  c.expect(!full.transposed, "f = 80 < m = 400 must run in direct orientation");
  c.expect(min_eigenvalue(full.a_star) > 0.0, "a_star must be PD");
  c.expect(min_eigenvalue(full.b_star) > 0.0, "b_star must be PD");
  c.expect(elapsed_s(t0) < 1800.0, "study must finish in under 30 minutes");
  report(7, "flip-flop plug-in is unbiased and sharpens at scale", c);
}

TEST_CASE("criterion_8") {
  Criterion c;
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    const DataSet d = sample_matrix_normal(ar1(5, 0.5).covariance,
                                           ar1(6, 0.3).covariance, 2, {seed});
    PenaltyConfig cfg;
    cfg.mode = PenaltyMode::Explicit;
    cfg.lambda_A = 0.15;
    cfg.lambda_B = 0.2;
    const GeminiFit fit = gemini_estimate(d, cfg);
    const KroneckerEstimate k = assemble_kronecker(fit);
    if (!k.full || !k.full_inv) {
      c.expect(false, "explicit product missing for a 30-dimensional case");
      continue;
    }
    // the assembled inverse is the inverse of the assembled product
    const Matrix prod = matmul(k.full->matrix(), k.full_inv->matrix());
    double inv_err = 0.0;
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        inv_err = std::max(inv_err,
                           std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
    if (inv_err > 1e-8)
      c.expect(false, "factor-inverse identity off by " +
                          std::to_string(inv_err));

    const StarNormalized star = normalize_star(fit);
    double tr = 0.0;
    for (std::size_t i = 0; i < 5; ++i) tr += star.a_star(i, i);
    if (std::abs(tr - 5.0) > 1e-10)
      c.expect(false, "tr(a_star) = " + std::to_string(tr) + ", want 5");
    const SymMatrix sp = kronecker(star.a_star, star.b_star);
    double prod_err = 0.0;
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        prod_err = std::max(prod_err, std::abs(sp(i, j) - (*k.full)(i, j)));
    if (prod_err > 1e-10)
      c.expect(false, "star factorization changes the product by " +
                          std::to_string(prod_err));
  }
  report(8, "Kronecker assembly and star normalization are exact", c);
}

TEST_CASE("criterion_9") {
  Criterion c;
  const fs::path base =
      fs::temp_directory_path() /
      ("kronprec_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  fs::create_directories(base);

  auto run = [&](const std::string& args) {
    const std::string cmd =
        "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
  };

  const std::string spec =
      "roc --model-a ar1:0.6 --model-b ar1:0.4 --f 10 --m 8 --n 1 --trials 4 "
      "--method nipff --grid 0.05,0.2,0.5 --seed 11 ";
  const fs::path d1 = base / "t1";
  const fs::path d4 = base / "t4";
  c.expect(run(spec + "--threads 1 --out \"" + d1.string() + "\"") == 0,
           "single-thread run failed");
  c.expect(run(spec + "--threads 4 --out \"" + d4.string() + "\"") == 0,
           "four-thread run failed");

  if (c.ok()) {
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
      const std::string name = entry.path().filename().string();
      if (name == "run_config.json") continue;  // records the thread flag
      ++compared;
      if (read_text(entry.path().string()) !=
          read_text((d4 / name).string()))
        c.expect(false, name + " differs between thread counts");
    }
    c.expect(compared >= 14, "expected the full set of nipff reports, saw " +
                                 std::to_string(compared));
  }
  fs::remove_all(base);
  report(9, "results are independent of the worker thread count", c);
}
