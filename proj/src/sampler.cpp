#include "kron/sampler.hpp"

#include <cmath>

namespace kron {

namespace {

SymMatrix scaled(const SymMatrix& s, double factor) {
  SymMatrix out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, s(i, j) * factor);
  return out;
}

}  // namespace

DataSet sample_matrix_normal(const SymMatrix& a, const SymMatrix& b, std::size_t n,
                             const RngSpec& spec, std::uint64_t trial) {
  if (n < 1) throw DimensionMismatch("sample_matrix_normal: need n >= 1");
  const std::size_t m = a.dim(), f = b.dim();

  double tr = 0.0;
  for (std::size_t i = 0; i < m; ++i) tr += a(i, i);
  if (!(tr > 0.0)) throw NotPSD("sample_matrix_normal: tr(A) must be positive");
  const double scale = std::exp2(-std::round(std::log2(tr / static_cast<double>(m))));

  const SymMatrix ra = sym_sqrt(scaled(a, scale));
  const SymMatrix rb = sym_sqrt(scaled(b, 1.0 / scale));

  std::vector<Matrix> xs;
  xs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = Rng::substream(spec, trial, t);
    Matrix z(f, m);
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < m; ++j) z(i, j) = rng.normal();
    xs.push_back(matmul(matmul(rb.matrix(), z), ra.matrix()));
  }
  return DataSet::from_matrices(std::move(xs));
}

}  // namespace kron
