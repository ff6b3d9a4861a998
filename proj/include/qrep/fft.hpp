#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "qrep/grid.hpp"

namespace qrep::detail {

// The FFTW planner is not re-entrant; execution of a private plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

enum class FftSign { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

/// Unnormalized in-place DFT: sum_j y_j exp(-+2 pi i jk/n).
inline void fft_inplace(std::vector<cplx>& y, FftSign sign) {
  auto* data = reinterpret_cast<fftw_complex*>(y.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(y.size()), data, data, static_cast<int>(sign), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

inline double alternating(std::size_t j) { return (j & 1U) ? -1.0 : 1.0; }

/// Samples f(x_j) on `g` -> (1/sqrt(2 pi)) sum_j f_j exp(-i k_m x_j) dx on
/// g.dual(), both lattices indexed in monotone order. Uses
/// k_m x_j = k_m c + 2 pi mj/n - pi m - pi j + pi n/2 with n divisible by 4.
inline std::vector<cplx> unitary_dft(std::span<const cplx> f, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<cplx> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = alternating(j) * f[j];
  fft_inplace(y, FftSign::Forward);
  const Grid k = g.dual();
  const double scale = g.spacing() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t m = 0; m < n; ++m) {
    cplx phase = alternating(m) * scale;
    if (g.center() != 0.0) phase *= std::polar(1.0, -k.point(m) * g.center());
    y[m] *= phase;
  }
  return y;
}

/// Inverse of unitary_dft: coefficients on g.dual() -> samples on g.
inline std::vector<cplx> unitary_idft(std::span<const cplx> fk, const Grid& g) {
  const std::size_t n = g.size();
  const Grid k = g.dual();
  std::vector<cplx> y(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx phase = alternating(m);
    if (g.center() != 0.0) phase *= std::polar(1.0, k.point(m) * g.center());
    y[m] = phase * fk[m];
  }
  fft_inplace(y, FftSign::Backward);
  const double scale = k.spacing() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) y[j] *= alternating(j) * scale;
  return y;
}

}  // namespace qrep::detail
