#pragma once

#include "kron/dataset.hpp"
#include "kron/gemini.hpp"

namespace kron {

/// Coupled sample covariance (1/(n f)) sum_t X(t)^T B^-1 X(t), m x m.
SymMatrix tilde_A(const DataSet& data, const SymMatrix& b);

/// (1/(n m)) sum_t X(t) A^-1 X(t)^T, f x f.
SymMatrix tilde_B(const DataSet& data, const SymMatrix& a);

struct NipffPenalties {
  double lambda_A0 = 0.0;  // step 1 (row-correlation glasso)
  double lambda_B1 = 0.0;  // step 2
  double lambda_A1 = 0.0;  // step 3
  bool clamped = false;
};

/// Theory recursions: lambda_{m,n} = c*sqrt(log(max(m,f))/(m n)), lambda_{f,n}
/// likewise over f; alpha = c_A*lambda_{m,n} clamped below 1/3; lambda_A0 =
/// 2 alpha/(eps (1-alpha)); lambda_B1 = c2*(lambda_{f,n}+lambda_{m,n});
/// lambda_A1 = c3*(lambda_{m,n}+lambda_{f,n}). All floored at cfg.min_penalty.
NipffPenalties nipff_penalties(std::size_t f, std::size_t m, std::size_t n,
                               const PenaltyConfig& cfg);

struct NipffResult {
  SymMatrix b1;           // step-1 covariance estimate W2 B_rho W2 / m
  SymMatrix a_star;       // step-2 output
  SymMatrix b_star;       // step-3 output
  PrecisionEstimate a_prec;  // a_star^-1
  PrecisionEstimate b_prec;  // b_star^-1
  CorrelationMatrix gamma_a;  // step-2 re-correlation of tilde_A(b1)
  CorrelationMatrix gamma_b;  // step-3 re-correlation of tilde_B(a_star)
  NipffPenalties penalties_used;
  bool transposed = false;  // f > m input ran with roles swapped
};

/// Three-step noniterative penalized flip-flop:
///   1. glasso on the row correlation at lambda_A0; B1 = W2 B_rho W2 / m.
///   2. tilde_A(B1), re-correlate, glasso at lambda_B1; A* = W~1 A_rho W~1.
///   3. tilde_B(A*), re-correlate, glasso at lambda_A1; B* = W~2 B_rho W~2.
/// No further iterations. Inputs with f > m are transposed first and the
/// orientation recorded.
NipffResult nipff(const DataSet& data, const PenaltyConfig& cfg,
                  const GlassoOptions& gopts = {});

/// Steps 2 and 3 given an externally chosen B1 (the staged ROC protocol).
SymMatrix nipff_step2(const DataSet& data, const SymMatrix& b1, double lambda_B1,
                      const GlassoOptions& gopts, CorrelationMatrix* gamma_out = nullptr,
                      PrecisionEstimate* prec_out = nullptr, double edge_tol = 1e-8);
SymMatrix nipff_step3(const DataSet& data, const SymMatrix& a1, double lambda_A1,
                      const GlassoOptions& gopts, CorrelationMatrix* gamma_out = nullptr,
                      PrecisionEstimate* prec_out = nullptr, double edge_tol = 1e-8);

}  // namespace kron
