#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace btlab {

using Cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Splitmix64-based deterministic RNG. Used wherever reproducible pseudo-random
/// data is needed (Arnoldi starting vectors, test matrices); byte-identical
/// sequences on every platform, unlike std distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  Cplx next_cplx() { return {next_symmetric(), next_symmetric()}; }

 private:
  std::uint64_t state_;
};

inline double sq(double x) { return x * x; }

inline double norm2(std::span<const Cplx> v) {
  double s = 0.0;
  for (const Cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline Cplx dot_hermitian(std::span<const Cplx> a, std::span<const Cplx> b) {
  Cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline Cplx dot_bilinear(std::span<const Cplx> a, std::span<const Cplx> b) {
  Cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace btlab
