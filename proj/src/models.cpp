#include "kron/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kron/linalg.hpp"

namespace kron {

GroundTruth ar1(std::size_t m, double rho) {
  if (m < 2) throw DimensionTooSmall("ar1: need m >= 2");
  if (!(std::abs(rho) < 1.0)) throw Error("ar1: need |rho| < 1");

  GroundTruth gt;
  gt.model_tag = "ar1";
  SymMatrix cov(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      cov.set(i, j, std::pow(rho, static_cast<double>(i - j)));

  SymMatrix prec(m);
  const double denom = 1.0 - rho * rho;
  for (std::size_t i = 0; i < m; ++i) {
    const bool endpoint = (i == 0 || i == m - 1);
    prec.set(i, i, (endpoint ? 1.0 : 1.0 + rho * rho) / denom);
    if (i + 1 < m) prec.set(i, i + 1, -rho / denom);
  }
  if (rho != 0.0)
    for (std::size_t i = 0; i + 1 < m; ++i) gt.edges.emplace_back(i, i + 1);
  gt.covariance = std::move(cov);
  gt.precision = std::move(prec);
  return gt;
}

GroundTruth star_block(std::size_t m, std::size_t n_blocks, std::size_t leaves,
                       double rho) {
  const std::size_t block = leaves + 1;
  if (m < n_blocks * block)
    throw DimensionTooSmall("star_block: need m >= n_blocks*(leaves+1)");

  GroundTruth gt;
  gt.model_tag = "star_block";
  SymMatrix cov(m);
  SymMatrix prec(m);
  for (std::size_t i = 0; i < m; ++i) {
    cov.set(i, i, 1.0);
    prec.set(i, i, 1.0);  // singleton rows; block rows overwritten below
  }

  // blocks occupy indices 0..n_blocks*block-1 contiguously, hub first
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const std::size_t base = b * block;
    SymMatrix s(block);
    for (std::size_t i = 0; i < block; ++i) s.set(i, i, 1.0);
    for (std::size_t l = 1; l < block; ++l) {
      s.set(0, l, rho);
      gt.edges.emplace_back(base, base + l);
      for (std::size_t l2 = l + 1; l2 < block; ++l2) s.set(l, l2, rho * rho);
    }
    const SymMatrix sinv = inverse_spd(s);
    for (std::size_t i = 0; i < block; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        cov.set(base + i, base + j, s(i, j));
        prec.set(base + i, base + j, sinv(i, j));
      }
  }
  if (rho == 0.0) gt.edges.clear();
  gt.covariance = std::move(cov);
  gt.precision = std::move(prec);
  return gt;
}

GroundTruth random_concentration(std::size_t f, std::size_t d, double w_min,
                                 double w_max, Rng& rng, double base) {
  if (!(0.0 < w_min && w_min <= w_max))
    throw Error("random_concentration: need 0 < w_min <= w_max");
  const std::size_t max_edges = f * (f - 1) / 2;
  if (d > max_edges)
    throw TooManyEdges("random_concentration: d exceeds f(f-1)/2");

  GroundTruth gt;
  gt.model_tag = "random_concentration";
  SymMatrix prec(f);
  for (std::size_t i = 0; i < f; ++i) prec.set(i, i, base);

  // sample d distinct unordered pairs without replacement; weights drawn in
  // selection order
  std::vector<bool> used(max_edges, false);
  auto pair_index = [f](std::size_t i, std::size_t j) {
    // i < j
    return i * f - i * (i + 1) / 2 + (j - i - 1);
  };
  std::size_t picked = 0;
  while (picked < d) {
    const std::size_t i = rng.below(f);
    const std::size_t j = rng.below(f);
    if (i == j) continue;
    const std::size_t a = std::min(i, j), b = std::max(i, j);
    const std::size_t pi = pair_index(a, b);
    if (used[pi]) continue;
    used[pi] = true;
    const double w = w_min + (w_max - w_min) * rng.uniform();
    prec.set(a, b, prec(a, b) - w);
    prec.set(a, a, prec(a, a) + w);
    prec.set(b, b, prec(b, b) + w);
    gt.edges.emplace_back(a, b);
    ++picked;
  }
  std::sort(gt.edges.begin(), gt.edges.end());
  gt.covariance = inverse_spd(prec);
  gt.precision = std::move(prec);
  return gt;
}

}  // namespace kron
