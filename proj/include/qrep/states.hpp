#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qrep/grid.hpp"

namespace qrep {

/// Chirped, boosted Gaussian
///   (pi s^2)^(-1/4) exp(-(x-x0)^2/(2 s^2)) exp(i c (x-x0)^2/2) exp(i p0 x).
/// The chirp rate c is what makes <C> - <X><P> nonzero.
struct GaussianSpec {
  double s = 1.0;
  double x0 = 0.0;
  double p0 = 0.0;
  double c = 0.0;
};

inline Wavefunction gaussian(const Grid& g, const GaussianSpec& spec) {
  detail::require(std::isfinite(spec.s) && std::isfinite(spec.x0) && std::isfinite(spec.p0) &&
                      std::isfinite(spec.c),
                  "finite_parameters", "Gaussian parameters must be finite");
  detail::require(spec.s >= 4.0 * g.spacing(), "resolved_width",
                  "width s = " + std::to_string(spec.s) + " is below 4*dx = " +
                      std::to_string(4.0 * g.spacing()));
  detail::require(spec.s <= g.length() / 8.0, "contained_width",
                  "width s = " + std::to_string(spec.s) + " exceeds L/8 = " + std::to_string(g.length() / 8.0));

  const double amp = std::pow(std::numbers::pi * spec.s * spec.s, -0.25);
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    const double d = x - spec.x0;
    const double envelope = amp * std::exp(-d * d / (2.0 * spec.s * spec.s));
    out[j] = envelope * std::polar(1.0, 0.5 * spec.c * d * d + spec.p0 * x);
  }
  return {g, std::move(out), Representation::position()};
}

inline constexpr int kMaxHermiteOrder = 12;

/// Normalized oscillator eigenfunction h_k(x), built with the normalized
/// recurrence h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1}.
inline double hermite_function(int k, double x) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int m = 0; m < k; ++m) {
    const double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Wavefunction hermite(const Grid& g, int k) {
  detail::require(k >= 0 && k <= kMaxHermiteOrder, "hermite_order",
                  "order must lie in [0, " + std::to_string(kMaxHermiteOrder) + "], got " + std::to_string(k));
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = hermite_function(k, g.point(j));
  return {g, std::move(out), Representation::position()};
}

}  // namespace qrep
