#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace kron {

/// Seed plus the substream derivation rule: the stream for (trial, replicate)
/// is keyed by seed ^ mix64(trial, replicate), so draws depend only on the
/// triple and not on execution order or thread count.
struct RngSpec {
  std::uint64_t seed = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t trial, std::uint64_t replicate) {
  std::uint64_t s = trial * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t a = splitmix64(s);
  s = replicate * 0xd1342543de82ef95ULL + a;
  return splitmix64(s);
}
}  // namespace detail

/// Counter-based generator (splitmix64 stream) with Box-Muller normals.
/// Deterministic and portable; one instance per substream.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(key) {}

  static Rng substream(const RngSpec& spec, std::uint64_t trial, std::uint64_t replicate) {
    return Rng(spec.seed ^ detail::mix64(trial, replicate));
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  /// Uniform in (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller, pairs cached).
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling, no modulo bias
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace kron
