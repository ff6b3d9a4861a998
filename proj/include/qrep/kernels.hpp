#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qrep/grid.hpp"

namespace qrep {

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

namespace detail {
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}

/// The eigenfunctions of a*X + b*P (a, b >= 0, b > 0) in the position
/// representation,
///
///   eta_lambda(x) = exp(i phase) / sqrt(2 pi b),
///   phase = pi/4 + q lambda^2 - a x^2/(2b) + lambda x/b,
///
/// which is the completed-square form of
///   exp(i(r lambda^2 + pi/4)) exp(-(i/2)(a/b)(x - lambda/a)^2),  r = q + 1/(2ab).
///
/// The rotation family uses r = 1/(2 cos theta) directly. For the linear
/// family the extra constant phase exp(i (1-alpha) lambda^2/2) is folded
/// into q: without it the alpha -> 0 limit picks up exp(-i lambda^2/2) and
/// misses the pure plane wave exp(i pi/4) exp(i lambda x)/sqrt(2 pi), while
/// the alpha -> 1 limit exp(i lambda^2/2) delta(x - lambda) is unchanged.
struct ChirpFamily {
  double a;
  double b;
  double q;

  static ChirpFamily interp(double alpha) {
    detail::require(alpha >= 0.0 && alpha < 1.0, "alpha_range",
                    "chirp family needs alpha in [0, 1), got " + std::to_string(alpha));
    const double beta = 1.0 - alpha;
    return {alpha, beta, -alpha * (2.0 - alpha) / (2.0 * beta)};
  }

  static ChirpFamily rotation(double theta) {
    detail::require(theta > 0.0 && theta <= std::numbers::pi / 2, "theta_range",
                    "theta must lie in (0, pi/2], got " + std::to_string(theta));
    if (theta == std::numbers::pi / 2) return {0.0, 1.0, 0.0};
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -c / (2.0 * s * (1.0 + s))};
  }

  /// Coefficient r of the lambda^2 phase once the square is completed.
  double r() const { return q + 1.0 / (2.0 * a * b); }

  cplx value(double lambda, double x) const {
    const double phase = std::numbers::pi / 4 + q * lambda * lambda - a * x * x / (2.0 * b) + lambda * x / b;
    return std::polar(detail::kInvSqrt2Pi / std::sqrt(b), phase);
  }
};

namespace detail {

// The chirp exp(-i a x^2/(2b)) must advance by less than pi between
// neighbouring samples at the edge of the grid.
inline void require_chirp_resolved(const ChirpFamily& fam, const Grid& g) {
  const double step = (fam.a / fam.b) * (g.length() / 2.0) * g.spacing();
  require(step <= std::numbers::pi, "chirp_resolution",
          "chirp phase step at the domain edge is " + std::to_string(step) +
              " rad > pi; need (a/b)*(L/2)*dx <= pi, i.e. a finer grid or a smaller ratio a/b");
}

template <class F>
Wavefunction sample(const Grid& g, Representation label, F&& f) {
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f(g.point(j));
  return {g, std::move(out), label};
}

}  // namespace detail

inline cplx plane_wave_value(double p, double x) { return std::polar(detail::kInvSqrt2Pi, p * x); }

/// (1/sqrt(2 pi)) exp(i p x): the momentum eigenfunction in the position
/// representation. Delta-normalized, so the samples are not unit norm.
inline Wavefunction plane_wave(const Grid& g, double p) {
  const double limit = std::numbers::pi / g.spacing();
  detail::require(std::abs(p) <= limit * (1.0 + 1e-12), "representable_momentum",
                  "|p| = " + std::to_string(std::abs(p)) + " exceeds pi/dx = " + std::to_string(limit));
  return detail::sample(g, Representation::position(), [p](double x) { return plane_wave_value(p, x); });
}

/// (1/sqrt(2 pi)) exp(-i a p) on the momentum lattice g.dual().
inline Wavefunction position_kernel_in_momentum(const Grid& g, double a) {
  const Grid k = g.dual();
  const double limit = std::numbers::pi / k.spacing();
  detail::require(std::abs(a) <= limit * (1.0 + 1e-12), "representable_position",
                  "|a| = " + std::to_string(std::abs(a)) + " exceeds pi/dp = " + std::to_string(limit));
  return detail::sample(k, Representation::momentum(), [a](double p) { return plane_wave_value(-a, p); });
}

inline cplx interp_kernel_value(double alpha, double lambda, double x) {
  return ChirpFamily::interp(alpha).value(lambda, x);
}

/// Eigenfunction of alpha X + (1 - alpha) P with eigenvalue lambda. At
/// alpha = 1 the delta is the nearest-sample impulse of height 1/dx with
/// phase exp(i lambda^2/2).
inline Wavefunction interp_kernel(const Grid& g, double alpha, double lambda) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha_range",
                  "alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (alpha == 1.0) {
    detail::require(lambda >= g.front() - g.spacing() / 2 && lambda <= g.back() + g.spacing() / 2,
                    "eigenvalue_in_grid", "lambda = " + std::to_string(lambda) + " lies outside the grid");
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    out[g.nearest(lambda)] = std::polar(1.0 / g.spacing(), 0.5 * lambda * lambda);
    return {g, std::move(out), Representation::position()};
  }
  const ChirpFamily fam = ChirpFamily::interp(alpha);
  detail::require_chirp_resolved(fam, g);
  return detail::sample(g, Representation::position(), [&](double x) { return fam.value(lambda, x); });
}

inline cplx rotation_kernel_value(double theta, double lambda, double x) {
  return ChirpFamily::rotation(theta).value(lambda, x);
}

/// Eigenfunction of X cos(theta) + P sin(theta) with eigenvalue lambda.
inline Wavefunction rotation_kernel(const Grid& g, double theta, double lambda) {
  const ChirpFamily fam = ChirpFamily::rotation(theta);
  detail::require_chirp_resolved(fam, g);
  return detail::sample(g, Representation::position(), [&](double x) { return fam.value(lambda, x); });
}

/// 1/(2 sqrt(pi)): fixes <xi_g, xi_g'> = delta(gamma - gamma') per parity.
inline constexpr double kCorrelationNorm = 0.28209479177387814347;

/// K |x|^(-1/2) exp(i gamma ln|x|), times sign(x) for the odd channel.
/// The integrable singularity at x = 0 is assigned the value 0.
inline cplx correlation_kernel_value(double gamma, Parity par, double x) {
  if (x == 0.0) return {0.0, 0.0};
  const double r = std::abs(x);
  const double sign = (par == Parity::Odd && x < 0.0) ? -1.0 : 1.0;
  return std::polar(sign * kCorrelationNorm / std::sqrt(r), gamma * std::log(r));
}

inline Wavefunction correlation_kernel(const Grid& g, double gamma, Parity par) {
  detail::require(std::isfinite(gamma), "finite_eigenvalue", "gamma must be finite");
  return detail::sample(g, Representation::position(),
                        [&](double x) { return correlation_kernel_value(gamma, par, x); });
}

inline cplx fresnel_delta_value(double eps, double x) {
  constexpr double inv_sqrt_pi = 0.56418958354775628695;
  return std::polar(inv_sqrt_pi / std::sqrt(eps), std::numbers::pi / 4 - x * x / eps);
}

/// (1/sqrt(eps)) (exp(i pi/4)/sqrt(pi)) exp(-i x^2/eps), which tends to
/// delta(x) as eps -> 0.
inline Wavefunction fresnel_delta(const Grid& g, double eps) {
  const double floor = 4.0 * g.spacing() * g.spacing();
  detail::require(std::isfinite(eps) && eps >= floor, "resolvable_eps",
                  "eps = " + std::to_string(eps) + " is below 4*dx^2 = " + std::to_string(floor));
  return detail::sample(g, Representation::position(), [eps](double x) { return fresnel_delta_value(eps, x); });
}

}  // namespace qrep
