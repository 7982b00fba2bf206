#pragma once

#include "kron/dataset.hpp"
#include "kron/linalg.hpp"
#include "kron/rng.hpp"

namespace kron {

/// Draws n replicates X(t) = B^{1/2} Z(t) A^{1/2} with Z(t) i.i.d. standard
/// normal entries. A is m x m (column covariance), B is f x f (row
/// covariance). Replicate t uses the (trial, t) substream of `spec`, so output
/// is bit-identical no matter how calls are scheduled.
///
/// The pair (A, B) is first rescaled to (A/2^k, B*2^k) with k =
/// round(log2(tr(A)/m)). The distribution only depends on the product
/// A (x) B, and the power-of-two canonical scale makes sampling exactly
/// invariant under (eta*A, B/eta) for dyadic eta.
DataSet sample_matrix_normal(const SymMatrix& a, const SymMatrix& b, std::size_t n,
                             const RngSpec& spec, std::uint64_t trial = 0);

}  // namespace kron
