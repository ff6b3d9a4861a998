#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrep/error.hpp"
#include "qrep/interpolation.hpp"

namespace qrep {

using cplx = std::complex<double>;

/// Uniform lattice of n points (n a power of two, n >= 8),
///
///     point(j) = center + (j - n/2) * spacing,   j = 0 .. n-1,
///
/// together with the spacing of its Fourier-dual lattice, 2*pi/(n*spacing).
/// Position grids are centered on 0, so point(n/2) == 0 exactly and the
/// lattice is symmetric under j -> n - j. Off-center grids only appear as
/// the log-radius lattice of the correlation transform.
class Grid {
 public:
  /// Symmetric grid of n points covering [-length/2, length/2).
  static Grid make(std::size_t n, double length) {
    check_size(n);
    detail::require(std::isfinite(length) && length > 0.0, "positive_length",
                    "grid length must be positive, got " + std::to_string(length));
    const double step = length / static_cast<double>(n);
    return Grid(n, step, 0.0, dual_step(n, step));
  }

  /// Grid of n points covering [lo, hi) with spacing (hi - lo)/n.
  static Grid window(std::size_t n, double lo, double hi) {
    check_size(n);
    detail::require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, "ordered_window",
                    "window must satisfy lo < hi");
    const double step = (hi - lo) / static_cast<double>(n);
    const double center = lo + static_cast<double>(n / 2) * step;
    return Grid(n, step, center, dual_step(n, step));
  }

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return step_; }
  double center() const noexcept { return center_; }
  double length() const noexcept { return step_ * static_cast<double>(n_); }
  double front() const noexcept { return point(0); }
  double back() const noexcept { return point(n_ - 1); }
  double dual_spacing() const noexcept { return dual_step_; }

  double point(std::size_t j) const noexcept {
    return center_ + (static_cast<double>(j) - static_cast<double>(n_ / 2)) * step_;
  }

  std::vector<double> points() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = point(j);
    return xs;
  }

  /// The reciprocal lattice, centered on 0. Swapping the stored spacings
  /// makes dual() an exact involution on centered grids.
  Grid dual() const noexcept { return Grid(n_, dual_step_, 0.0, step_); }

  /// Same lattice stretched by `factor` about its center (used for the
  /// eigenvalue axes of the interpolating transforms).
  Grid scaled(double factor) const {
    detail::require(std::isfinite(factor) && factor > 0.0, "positive_scale",
                    "scale factor must be positive");
    return Grid(n_, step_ * factor, center_ * factor, dual_step_ / factor);
  }

  /// Index of the lattice point closest to x (clamped to the lattice).
  std::size_t nearest(double x) const noexcept {
    const double t = std::round((x - front()) / step_);
    return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(n_ - 1)));
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(std::size_t n, double step, double center, double dual)
      : n_(n), step_(step), center_(center), dual_step_(dual) {}

  static double dual_step(std::size_t n, double step) {
    return 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  }

  static void check_size(std::size_t n) {
    detail::require(n >= 8 && std::has_single_bit(n), "power_of_two",
                    "grid size must be a power of two >= 8, got " + std::to_string(n));
  }

  std::size_t n_;
  double step_;
  double center_;
  double dual_step_;
};

inline Grid make_grid(std::size_t n, double length) { return Grid::make(n, length); }
inline Grid dual_grid(const Grid& g) { return g.dual(); }

enum class Basis { Position, Momentum, Interp, Rotation, Correlation };

/// Which eigenbasis a set of samples are coefficients in. Interp carries
/// alpha in [0, 1]; Rotation carries theta in (0, pi/2].
class Representation {
 public:
  static Representation position() { return {Basis::Position, 0.0}; }
  static Representation momentum() { return {Basis::Momentum, 0.0}; }
  static Representation correlation() { return {Basis::Correlation, 0.0}; }
  static Representation interp(double alpha) {
    detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha_range",
                    "alpha must lie in [0, 1], got " + std::to_string(alpha));
    return {Basis::Interp, alpha};
  }
  static Representation rotation(double theta) {
    detail::require(theta > 0.0 && theta <= std::numbers::pi / 2, "theta_range",
                    "theta must lie in (0, pi/2], got " + std::to_string(theta));
    return {Basis::Rotation, theta};
  }

  Basis basis() const noexcept { return basis_; }
  double parameter() const noexcept { return parameter_; }

  std::string name() const {
    switch (basis_) {
      case Basis::Position: return "position";
      case Basis::Momentum: return "momentum";
      case Basis::Interp: return "interp(alpha=" + std::to_string(parameter_) + ")";
      case Basis::Rotation: return "rotation(theta=" + std::to_string(parameter_) + ")";
      case Basis::Correlation: return "correlation";
    }
    return "unknown";
  }

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  Representation(Basis b, double p) : basis_(b), parameter_(p) {}
  Basis basis_;
  double parameter_;
};

/// Complex samples on the lattice of the label's own variable: x for
/// Position, p for Momentum, lambda for Interp/Rotation.
class Wavefunction {
 public:
  Wavefunction(Grid grid, std::vector<cplx> samples, Representation label)
      : grid_(grid), samples_(std::move(samples)), label_(label) {
    detail::require(samples_.size() == grid_.size(), "sample_count",
                    "expected " + std::to_string(grid_.size()) + " samples, got " +
                        std::to_string(samples_.size()));
    detail::require(std::all_of(samples_.begin(), samples_.end(),
                                [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }),
                    "finite_samples", "samples must be finite");
  }

  const Grid& grid() const noexcept { return grid_; }
  const Representation& label() const noexcept { return label_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  cplx operator[](std::size_t j) const noexcept { return samples_[j]; }

  /// Squared norm under the rectangle rule of the label's variable.
  double norm2() const noexcept {
    double acc = 0.0;
    for (cplx z : samples_) acc += std::norm(z);
    return acc * grid_.spacing();
  }

 private:
  Grid grid_;
  std::vector<cplx> samples_;
  Representation label_;
};

/// <a, b> = sum_j conj(a_j) b_j * spacing.
inline cplx inner(const Wavefunction& a, const Wavefunction& b) {
  detail::require(a.grid() == b.grid(), "same_grid", "inner product of samples on different grids");
  detail::require(a.label() == b.label(), "same_representation",
                  "inner product across representations " + a.label().name() + " and " +
                      b.label().name());
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc * a.grid().spacing();
}

enum class Side { Positive, Negative };

/// Resamples psi onto the log-radius lattice u_i:
///
///     h(u_i) = sqrt(2) * exp(u_i/2) * psi(side * exp(u_i)),
///
/// with psi evaluated by cubic interpolation of its samples. For a parity
/// projection psi_part, sum |h|^2 du approximates the integral of |psi_part|^2
/// over both half-lines restricted to the window.
inline std::vector<cplx> log_resample(const Wavefunction& psi, const Grid& u_grid, Side side) {
  detail::require(psi.label() == Representation::position(), "position_representation",
                  "log_resample needs position samples, got " + psi.label().name());
  const Grid& g = psi.grid();
  const double u_max = u_grid.front() + u_grid.length();
  detail::require(std::exp(u_max) <= std::abs(g.front()) * (1.0 + 1e-12), "window_in_support",
                  "exp(u_max) = " + std::to_string(std::exp(u_max)) + " exceeds the grid half-width " +
                      std::to_string(std::abs(g.front())));
  const double sign = side == Side::Positive ? 1.0 : -1.0;
  std::vector<cplx> h(u_grid.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double u = u_grid.point(i);
    const double r = std::exp(u);
    h[i] = std::sqrt(2.0 * r) * detail::cubic_sample(psi.samples(), g.front(), g.spacing(), sign * r);
  }
  return h;
}

/// Parity flip x -> -x on a centered grid (index j -> n - j mod n). The
/// leftmost sample has no mirror inside the lattice and maps to itself.
inline Wavefunction parity_flip(const Wavefunction& psi) {
  const std::size_t n = psi.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = psi[(n - j) % n];
  return {psi.grid(), std::move(out), psi.label()};
}

}  // namespace qrep
