#pragma once

#include <string>
#include <vector>

#include "kron/matrix.hpp"
#include "kron/rng.hpp"

namespace kron {

/// Ground-truth covariance/precision pair with the off-diagonal support of
/// the precision matrix.
struct GroundTruth {
  SymMatrix covariance;
  SymMatrix precision;
  std::vector<Edge> edges;
  std::string model_tag;
};

/// AR(1): covariance rho^|i-j|, tridiagonal precision in closed form, chain
/// edge set.
GroundTruth ar1(std::size_t m, double rho);

/// Block-diagonal Star-Block covariance: n_blocks blocks of size leaves+1
/// (hub first), S = rho on hub-leaf pairs, rho^2 on leaf-leaf pairs, unit
/// diagonal; remaining nodes are singletons. Edge set is the hub-leaf stars.
GroundTruth star_block(std::size_t m, std::size_t n_blocks = 20,
                       std::size_t leaves = 8, double rho = 0.5);

/// Random concentration matrix: Pi = base*I, then d distinct pairs drawn
/// without replacement; each edge (i,j) with weight w ~ U[w_min, w_max]
/// subtracts w from pi_ij, pi_ji and adds w to pi_ii, pi_jj (keeps Pi
/// diagonally dominant, hence PD).
GroundTruth random_concentration(std::size_t f, std::size_t d, double w_min,
                                 double w_max, Rng& rng, double base = 0.25);

}  // namespace kron
