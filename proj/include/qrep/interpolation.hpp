#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace qrep::detail {

// Four-point Lagrange interpolation on uniform samples y_j at origin + j*step.
// Samples outside [0, n) read as zero, which is the right extension for
// states that have decayed at the edges of their grid.
inline std::complex<double> cubic_sample(std::span<const std::complex<double>> y, double origin,
                                         double step, double x) {
  const double t = (x - origin) / step;
  const double base = std::floor(t);
  const double f = t - base;
  const auto j = static_cast<std::ptrdiff_t>(base);
  const auto n = static_cast<std::ptrdiff_t>(y.size());

  const double w[4] = {
      -f * (f - 1.0) * (f - 2.0) / 6.0,
      (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
      -(f + 1.0) * f * (f - 2.0) / 2.0,
      (f + 1.0) * f * (f - 1.0) / 6.0,
  };
  std::complex<double> acc{0.0, 0.0};
  for (std::ptrdiff_t m = 0; m < 4; ++m) {
    const std::ptrdiff_t k = j - 1 + m;
    if (k >= 0 && k < n) acc += w[m] * y[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace qrep::detail
