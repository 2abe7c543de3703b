#ifndef WALKSPECTRA_NUMERIC_HPP
#define WALKSPECTRA_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

namespace walkspectra {

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the input, so results are reproducible.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  constexpr std::size_t kBlock = 16;
  if (v.size() <= kBlock) {
    T s{};
    for (const T &x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Integer power by repeated squaring; negative exponents invert.
inline std::complex<double> ipow(std::complex<double> z, int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  std::complex<double> r(1.0, 0.0);
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

/// Distance between two points of the complex plane.
inline double cdist(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b);
}

/// Maps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

}  // namespace walkspectra

#endif  // WALKSPECTRA_NUMERIC_HPP
