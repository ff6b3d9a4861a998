#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qrep/fft.hpp"
#include "qrep/grid.hpp"

namespace qrep {

inline constexpr double kContainmentThreshold = 1e-12;
inline constexpr double kImaginaryTolerance = 1e-9;

/// Probability in the outer n/32 samples at each end of the grid.
inline double edge_mass(const Wavefunction& psi) {
  const std::size_t n = psi.size();
  const std::size_t band = std::max<std::size_t>(1, n / 32);
  double acc = 0.0;
  for (std::size_t j = 0; j < band; ++j) acc += std::norm(psi[j]) + std::norm(psi[n - 1 - j]);
  return acc * psi.grid().spacing();
}

namespace detail {

inline void require_position(const Wavefunction& psi, const char* op) {
  require(psi.label() == Representation::position(), "position_representation",
          std::string(op) + " needs position samples, got " + psi.label().name());
}

inline void require_contained(const Wavefunction& psi) {
  const double m = edge_mass(psi);
  require(m <= kContainmentThreshold, "contained_state",
          "edge mass " + std::to_string(m) + " exceeds " + std::to_string(kContainmentThreshold) +
              "; spectral differentiation would see the periodic wrap");
}

/// -i d/dx of periodic samples: multiply by the wavenumber in frequency
/// space. The unpaired Nyquist mode is dropped so that real-valued
/// derivatives stay real and parity is preserved exactly.
inline std::vector<cplx> spectral_momentum(std::span<const cplx> f, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<cplx> y(f.begin(), f.end());
  fft_inplace(y, FftSign::Forward);
  const double dk = g.dual_spacing();
  for (std::size_t m = 0; m < n; ++m) {
    double k = 0.0;
    if (m < n / 2) k = static_cast<double>(m) * dk;
    else if (m > n / 2) k = -static_cast<double>(n - m) * dk;
    y[m] *= k / static_cast<double>(n);
  }
  fft_inplace(y, FftSign::Backward);
  return y;
}

inline std::vector<cplx> multiply_by_variable(std::span<const cplx> f, const Grid& g) {
  std::vector<cplx> y(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) y[j] = g.point(j) * f[j];
  return y;
}

/// (V D + D V)/2 with V the lattice variable and D = -i d/dv.
inline std::vector<cplx> symmetrized_dilation(std::span<const cplx> f, const Grid& g) {
  const auto vf = multiply_by_variable(f, g);
  const auto dvf = spectral_momentum(vf, g);
  const auto vdf = multiply_by_variable(spectral_momentum(f, g), g);
  std::vector<cplx> y(f.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = 0.5 * (vdf[j] + dvf[j]);
  return y;
}

}  // namespace detail

/// x psi(x). The result keeps the Position label but is not normalized.
inline Wavefunction apply_x(const Wavefunction& psi) {
  detail::require_position(psi, "apply_x");
  return {psi.grid(), detail::multiply_by_variable(psi.samples(), psi.grid()), psi.label()};
}

/// -i psi'(x), differentiated spectrally. Requires a contained state.
inline Wavefunction apply_p(const Wavefunction& psi) {
  detail::require_position(psi, "apply_p");
  detail::require_contained(psi);
  return {psi.grid(), detail::spectral_momentum(psi.samples(), psi.grid()), psi.label()};
}

namespace detail {
inline Wavefunction linear_combination(const Wavefunction& psi, double cx, double cp) {
  const auto x = apply_x(psi);
  const auto p = apply_p(psi);
  std::vector<cplx> y(psi.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = cx * x[j] + cp * p[j];
  return {psi.grid(), std::move(y), psi.label()};
}
}  // namespace detail

/// alpha X + (1 - alpha) P.
inline Wavefunction apply_s(const Wavefunction& psi, double alpha) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha_range", "alpha must lie in [0, 1]");
  return detail::linear_combination(psi, alpha, 1.0 - alpha);
}

/// X cos(theta) + P sin(theta).
inline Wavefunction apply_s_theta(const Wavefunction& psi, double theta) {
  detail::require(std::isfinite(theta), "finite_angle", "theta must be finite");
  return detail::linear_combination(psi, std::cos(theta), std::sin(theta));
}

/// C = (XP + PX)/2, which is -i(x d/dx + 1/2) on smooth states.
inline Wavefunction apply_c(const Wavefunction& psi) {
  detail::require_position(psi, "apply_c");
  detail::require_contained(psi);
  return {psi.grid(), detail::symmetrized_dilation(psi.samples(), psi.grid()), psi.label()};
}

/// C acting on momentum-representation samples, obtained from the position
/// form by renaming x -> p and complex conjugating: i(p d/dp + 1/2).
inline Wavefunction apply_c_momentum(const Wavefunction& phi) {
  detail::require(phi.label() == Representation::momentum(), "momentum_representation",
                  "apply_c_momentum needs momentum samples, got " + phi.label().name());
  detail::require_contained(phi);
  std::vector<cplx> conj_in(phi.size());
  for (std::size_t j = 0; j < conj_in.size(); ++j) conj_in[j] = std::conj(phi[j]);
  auto y = detail::symmetrized_dilation(conj_in, phi.grid());
  for (auto& z : y) z = std::conj(z);
  return {phi.grid(), std::move(y), phi.label()};
}

/// Observables of the form a X + b P, plus the correlation operator C.
class Observable {
 public:
  static Observable position() { return {Kind::Linear, 1.0, 0.0, "X"}; }
  static Observable momentum() { return {Kind::Linear, 0.0, 1.0, "P"}; }
  static Observable interp(double alpha) {
    detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha_range", "alpha must lie in [0, 1]");
    return {Kind::Linear, alpha, 1.0 - alpha, "S(alpha=" + std::to_string(alpha) + ")"};
  }
  static Observable rotation(double theta) {
    return {Kind::Linear, std::cos(theta), std::sin(theta), "S(theta=" + std::to_string(theta) + ")"};
  }
  static Observable correlation() { return {Kind::Dilation, 0.0, 0.0, "C"}; }

  const std::string& name() const noexcept { return name_; }

  /// Spectral action on contained position samples.
  Wavefunction apply(const Wavefunction& psi) const {
    if (kind_ == Kind::Dilation) return apply_c(psi);
    return detail::linear_combination(psi, a_, b_);
  }

  /// Pointwise action on a function known in closed form, with fourth-order
  /// central differences of step h. Used for non-normalizable kernels,
  /// where spectral differentiation does not apply.
  cplx apply_at(const std::function<cplx(double)>& f, double x, double h) const {
    const cplx d = (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
    const cplx i{0.0, 1.0};
    if (kind_ == Kind::Dilation) return -i * (x * d + 0.5 * f(x));
    return a_ * x * f(x) - i * b_ * d;
  }

 private:
  enum class Kind { Linear, Dilation };
  Observable(Kind k, double a, double b, std::string name) : kind_(k), a_(a), b_(b), name_(std::move(name)) {}
  Kind kind_;
  double a_;
  double b_;
  std::string name_;
};

/// Relative residual ||(Op - eigenvalue) f|| / ||f|| over the points xs.
inline double eigen_residual(const Observable& op, const std::function<cplx(double)>& f, cplx eigenvalue,
                             std::span<const double> xs, double h) {
  double num = 0.0;
  double den = 0.0;
  for (double x : xs) {
    const cplx fx = f(x);
    num += std::norm(op.apply_at(f, x, h) - eigenvalue * fx);
    den += std::norm(fx);
  }
  return std::sqrt(num / den);
}

/// <psi, (AB - BA) psi> for two spectral observables.
inline cplx commutator_expectation(const Observable& a, const Observable& b, const Wavefunction& psi) {
  return inner(psi, a.apply(b.apply(psi))) - inner(psi, b.apply(a.apply(psi)));
}

/// Expectation of a hermitian operator; throws when the imaginary part is
/// not negligible, which signals an unresolved or uncontained state.
inline double hermitian_expectation(const Wavefunction& psi, const Wavefunction& op_psi, const char* what) {
  const cplx v = inner(psi, op_psi) / psi.norm2();
  detail::require(std::abs(v.imag()) <= kImaginaryTolerance, "real_expectation",
                  std::string(what) + " has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

struct MomentReport {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double mean_c = 0.0;
  double corr_term = 0.0;       // mean_c - mean_x * mean_p
  double lhs = 0.0;             // var_x * var_p
  double rhs = 0.0;             // 1/4 + corr_term^2
  double heisenberg_rhs = 0.25;
};

inline MomentReport moments(const Wavefunction& psi) {
  detail::require_position(psi, "moments");
  detail::require_contained(psi);
  const double norm = psi.norm2();
  MomentReport r;
  r.mean_x = hermitian_expectation(psi, apply_x(psi), "<X>");
  r.mean_p = hermitian_expectation(psi, apply_p(psi), "<P>");
  r.mean_c = hermitian_expectation(psi, apply_c(psi), "<C>");

  // Variances as ||(A - <A>) psi||^2, which avoids cancellation in <A^2> - <A>^2.
  const auto xpsi = apply_x(psi);
  const auto ppsi = apply_p(psi);
  double vx = 0.0;
  double vp = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    vx += std::norm(xpsi[j] - r.mean_x * psi[j]);
    vp += std::norm(ppsi[j] - r.mean_p * psi[j]);
  }
  r.var_x = vx * psi.grid().spacing() / norm;
  r.var_p = vp * psi.grid().spacing() / norm;
  r.corr_term = r.mean_c - r.mean_x * r.mean_p;
  r.lhs = r.var_x * r.var_p;
  r.rhs = r.heisenberg_rhs + r.corr_term * r.corr_term;
  return r;
}

}  // namespace qrep
