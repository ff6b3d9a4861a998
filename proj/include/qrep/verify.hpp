#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qrep/kernels.hpp"
#include "qrep/operators.hpp"
#include "qrep/states.hpp"
#include "qrep/transforms.hpp"

namespace qrep {

struct CheckReport {
  std::string name;
  std::vector<std::string> claims;
  std::vector<std::pair<std::string, std::string>> parameters;
  double observed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// A relation between representations that the suites check numerically.
struct Claim {
  const char* id;
  const char* statement;
};

inline const std::vector<Claim>& claims() {
  static const std::vector<Claim> list = {
      {"position_expansion", "psi = int dx <phi_x, psi> phi_x; position coefficients are square integrable"},
      {"position_eigenfunction", "position eigenfunction in the position representation is delta(x - a)"},
      {"momentum_eigenfunction", "momentum eigenfunction in the position representation is exp(i g x)/sqrt(2 pi)"},
      {"position_eigenfunction_in_momentum", "position eigenfunction in the momentum representation is exp(-i a p)/sqrt(2 pi)"},
      {"momentum_eigenfunction_in_momentum", "momentum eigenfunction in the momentum representation is delta(p - g)"},
      {"interp_operator", "S(alpha) = alpha X + (1 - alpha) P interpolates between P and X"},
      {"interp_eigen_equation", "S(alpha) eta_lambda = lambda eta_lambda"},
      {"interp_expansion", "psi = int d lambda psi(lambda) eta_lambda"},
      {"interp_position_eigen_equation", "[alpha x - i (1 - alpha) d/dx] eta = lambda eta"},
      {"interp_kernel_formula", "closed-form chirp eigenfunction of S(alpha)"},
      {"momentum_limit", "alpha -> 0 gives exp(i pi/4) exp(i lambda x)/sqrt(2 pi)"},
      {"fresnel_delta", "(1/sqrt(eps)) exp(i pi/4)/sqrt(pi) exp(-i x^2/eps) -> delta(x)"},
      {"position_limit", "alpha -> 1 gives exp(i lambda^2/2) delta(x - lambda)"},
      {"rotation_operator", "S(theta) = X cos(theta) + P sin(theta), [S(theta), S(theta')] = i sin(theta' - theta)"},
      {"correlation_operator", "C = (XP + PX)/2 commutes with parity"},
      {"correlation_eigen_equation", "C xi_gamma = gamma xi_gamma"},
      {"correlation_even_kernel", "even eigenfunction K |x|^(-1/2 + i gamma)"},
      {"correlation_odd_kernel", "odd eigenfunction K sign(x) |x|^(-1/2 + i gamma)"},
      {"schrodinger_uncertainty", "var_x var_p >= 1/4 + (<C> - <X><P>)^2"},
      {"canonical_commutator", "[X, P] = i"},
      {"unbiased_bases", "|<phi_x, phi_p>| independent of x and p"},
      {"delta_normalization", "<eta_lambda, eta_lambda'> = delta(lambda - lambda')"},
      {"correlation_momentum_form", "C in the momentum representation is the conjugated position form"},
      {"correlation_spectrum", "spectral decomposition of C reproduces <C>"},
      {"hermitian_observables", "X, P, S, C are hermitian"},
  };
  return list;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"commutators", "eigen_residuals", "roundtrips",   "limits",
                                                 "uncertainty", "delta_limit",     "unbiasedness", "oracle_agreement"};
  return names;
}

namespace detail {

inline std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

class ReportSink {
 public:
  using Params = std::vector<std::pair<std::string, std::string>>;

  /// Runs `compute` and records its value against `tolerance`. A check
  /// whose computation throws is recorded as failed with the message.
  template <class F>
  void check(std::string name, std::vector<std::string> claims, Params params, double tolerance, F&& compute) {
    double observed = std::numeric_limits<double>::infinity();
    try {
      observed = compute(params);
    } catch (const std::exception& e) {
      params.emplace_back("error", e.what());
    }
    const bool ok = observed <= tolerance;  // false for NaN
    reports_.push_back({std::move(name), std::move(claims), std::move(params), observed, tolerance, ok});
  }

  std::vector<CheckReport> take() { return std::move(reports_); }

 private:
  std::vector<CheckReport> reports_;
};

struct NamedState {
  std::string name;
  std::function<Wavefunction(const Grid&)> make;
};

inline std::vector<NamedState> factory_states() {
  auto gauss = [](std::string name, GaussianSpec spec) {
    return NamedState{std::move(name), [spec](const Grid& g) { return gaussian(g, spec); }};
  };
  return {
      gauss("gaussian:s=1", {1.0, 0.0, 0.0, 0.0}),
      gauss("gaussian:s=1,c=2", {1.0, 0.0, 0.0, 2.0}),
      gauss("gaussian:s=0.7,x0=1.5,p0=0.7", {0.7, 1.5, 0.7, 0.0}),
      gauss("gaussian:s=2,x0=-1,c=-1", {2.0, -1.0, 0.0, -1.0}),
      {"hermite:k=1", [](const Grid& g) { return hermite(g, 1); }},
      {"hermite:k=3", [](const Grid& g) { return hermite(g, 3); }},
  };
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Points of g in the central half of the domain, |x| <= L/4.
inline std::vector<double> central_points(const Grid& g) {
  std::vector<double> xs;
  for (double x : g.points())
    if (std::abs(x) <= g.length() / 4.0) xs.push_back(x);
  return xs;
}

inline LogWindow wide_log_window(const Grid& g) {
  return {-14.0, std::log(std::min(18.0, 0.9 * g.length() / 2.0))};
}

inline constexpr std::size_t kWideGammaCount = 2048;

// Successive ratios err[i+1]/err[i]; <= 1 means non-increasing.
inline double worst_ratio(const std::vector<double>& errs) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) worst = std::max(worst, errs[i + 1] / errs[i]);
  return worst;
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

inline void suite_commutators(ReportSink& sink, const Grid& g) {
  const cplx i{0.0, 1.0};
  for (const auto& st : factory_states()) {
    sink.check("[X,P]=i", {"canonical_commutator"}, {{"state", st.name}}, 1e-8, [&](auto&) {
      const auto psi = st.make(g);
      return std::abs(commutator_expectation(Observable::position(), Observable::momentum(), psi) - i);
    });
  }

  const GaussianSpec probe{1.0, 0.5, -0.3, 1.0};
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      const double t1 = a * std::numbers::pi / 10;
      const double t2 = b * std::numbers::pi / 10;
      sink.check("[S(theta),S(theta')]=i sin(theta'-theta)", {"rotation_operator"},
                 {{"theta", num(t1)}, {"theta_prime", num(t2)}}, 1e-7, [&](auto&) {
                   const auto psi = gaussian(g, probe);
                   const cplx got = commutator_expectation(Observable::rotation(t1), Observable::rotation(t2), psi);
                   return std::abs(got - i * std::sin(t2 - t1));
                 });
    }
  }

  for (auto [a1, a2] : {std::pair{0.2, 0.7}, std::pair{0.5, 0.9}, std::pair{0.0, 1.0}}) {
    sink.check("[S(alpha),S(alpha')]=i(alpha-alpha')", {"interp_operator"},
               {{"alpha", num(a1)}, {"alpha_prime", num(a2)}}, 1e-7, [&](auto&) {
                 const auto psi = gaussian(g, probe);
                 const cplx got = commutator_expectation(Observable::interp(a1), Observable::interp(a2), psi);
                 return std::abs(got - i * (a1 - a2));
               });
  }

  for (const auto& st : factory_states()) {
    sink.check("[C,parity]=0", {"correlation_operator"}, {{"state", st.name}}, 1e-10, [&](auto&) {
      const auto psi = st.make(g);
      const auto lhs = parity_flip(apply_c(psi));
      const auto rhs = apply_c(parity_flip(psi));
      return max_abs_diff(lhs.samples(), rhs.samples());
    });
  }

  const std::vector<Observable> ops = {Observable::position(), Observable::momentum(), Observable::interp(0.3),
                                       Observable::rotation(std::numbers::pi / 5), Observable::correlation()};
  for (const auto& op : ops) {
    sink.check("hermiticity", {"hermitian_observables"}, {{"operator", op.name()}}, 1e-9, [&](auto&) {
      const auto phi = gaussian(g, {1.0, 0.0, 0.0, 2.0});
      const auto psi = gaussian(g, {0.7, 1.5, 0.7, 0.0});
      return std::abs(inner(phi, op.apply(psi)) - std::conj(inner(psi, op.apply(phi))));
    });
  }
}

inline void suite_eigen_residuals(ReportSink& sink, const Grid& g) {
  constexpr double tol = 1e-6;
  const double h = g.spacing() / 64.0;
  const auto xs = central_points(g);

  for (double p : {-2.0, 0.0, 1.5, 3.0}) {
    sink.check("plane_wave_residual", {"momentum_eigenfunction"}, {{"p", num(p)}}, tol, [&](auto&) {
      auto f = [p](double x) { return plane_wave_value(p, x); };
      return eigen_residual(Observable::momentum(), f, p, xs, h);
    });
  }
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double lambda : {-1.0, 0.0, 0.5, 2.0}) {
      sink.check("interp_kernel_residual", {"interp_eigen_equation", "interp_position_eigen_equation"},
                 {{"alpha", num(alpha)}, {"lambda", num(lambda)}}, tol, [&](auto&) {
                   interp_kernel(g, alpha, lambda);  // sampling preconditions
                   auto f = [&](double x) { return interp_kernel_value(alpha, lambda, x); };
                   return eigen_residual(Observable::interp(alpha), f, lambda, xs, h);
                 });
    }
  }
  for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
    for (double lambda : {-1.0, 0.5, 2.0}) {
      sink.check("rotation_kernel_residual", {"rotation_operator"}, {{"theta", num(theta)}, {"lambda", num(lambda)}},
                 tol, [&](auto&) {
                   rotation_kernel(g, theta, lambda);
                   auto f = [&](double x) { return rotation_kernel_value(theta, lambda, x); };
                   return eigen_residual(Observable::rotation(theta), f, lambda, xs, h);
                 });
    }
  }

  std::vector<double> rs;
  for (double x : g.points())
    if (std::abs(x) >= 1.0 && std::abs(x) <= g.length() / 4.0) rs.push_back(x);
  for (double gamma : {-2.0, 0.0, 1.0}) {
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const char* kernel_claim = par == Parity::Even ? "correlation_even_kernel" : "correlation_odd_kernel";
      sink.check("correlation_kernel_residual", {"correlation_eigen_equation", kernel_claim},
                 {{"gamma", num(gamma)}, {"parity", to_string(par)}}, tol, [&](auto&) {
                   auto f = [&](double x) { return correlation_kernel_value(gamma, par, x); };
                   return eigen_residual(Observable::correlation(), f, gamma, rs, h);
                 });
    }
  }
}

inline void suite_roundtrips(ReportSink& sink, const Grid& g) {
  for (const auto& st : factory_states()) {
    sink.check("fourier_roundtrip", {"position_expansion"}, {{"state", st.name}}, 1e-12, [&](auto&) {
      const auto psi = st.make(g);
      return max_abs_diff(from_momentum(to_momentum(psi)).samples(), psi.samples());
    });
    sink.check("fourier_norm", {"position_expansion"}, {{"state", st.name}}, 1e-10, [&](auto&) {
      const auto psi = st.make(g);
      return std::abs(to_momentum(psi).norm2() - psi.norm2());
    });
    sink.check("interp_norm", {"interp_expansion"}, {{"state", st.name}, {"alpha", "0.5"}}, 1e-8, [&](auto&) {
      const auto psi = st.make(g);
      return std::abs(interp_transform(psi, 0.5).norm2() - psi.norm2());
    });
    sink.check("rotation_norm", {"rotation_operator"}, {{"state", st.name}, {"theta", num(std::numbers::pi / 4)}},
               1e-8, [&](auto&) {
                 const auto psi = st.make(g);
                 return std::abs(rotation_transform(psi, std::numbers::pi / 4).norm2() - psi.norm2());
               });
  }

  const auto s1 = gaussian(g, {1.0, 0.0, 0.0, 0.0});
  sink.check("interp_oracle", {"interp_kernel_formula"}, {{"state", "gaussian:s=1"}, {"alpha", "0.5"}}, 1e-8,
             [&](auto&) {
               const auto fast = interp_transform(s1, 0.5);
               const auto xs = fast.grid().points();
               return max_abs_diff(fast.samples(), quadrature_oracle(s1, InterpFamily{0.5}, xs));
             });
  sink.check("rotation_oracle", {"rotation_operator"},
             {{"state", "gaussian:s=1"}, {"theta", num(std::numbers::pi / 4)}}, 1e-8, [&](auto&) {
               const auto fast = rotation_transform(s1, std::numbers::pi / 4);
               const auto xs = fast.grid().points();
               return max_abs_diff(fast.samples(), quadrature_oracle(s1, RotationFamily{std::numbers::pi / 4}, xs));
             });

  const LogWindow w = wide_log_window(g);
  const ReportSink::Params corr_params = {{"state", "gaussian:s=1"},
                                          {"u_min", num(w.u_min)},
                                          {"u_max", num(w.u_max)},
                                          {"n_gamma", std::to_string(kWideGammaCount)}};
  sink.check("correlation_roundtrip", {"correlation_even_kernel", "correlation_odd_kernel"}, corr_params, 1e-5,
             [&](auto& params) {
               const auto spec = correlation_transform(s1, w, kWideGammaCount);
               const auto back = correlation_inverse(spec, g);
               double worst = 0.0;
               for (std::size_t j = 0; j < g.size(); ++j) {
                 const double r = std::abs(g.point(j));
                 if (r >= 4.0 * g.spacing() && r <= 10.0) worst = std::max(worst, std::abs(back[j] - s1[j]));
               }
               params.emplace_back("window", "4dx<=|x|<=10");
               return worst;
             });
  sink.check("correlation_parseval", {"correlation_even_kernel", "correlation_odd_kernel"}, corr_params, 1e-6,
             [&](auto& params) {
               const auto spec = correlation_transform(s1, w, kWideGammaCount);
               params.emplace_back("tail_mass", num(spec.tail_mass));
               return std::abs(spec.norm2() - (s1.norm2() - spec.tail_mass));
             });
}

inline void suite_limits(ReportSink& sink, const Grid& g) {
  const auto s1 = gaussian(g, {1.0, 0.0, 0.0, 0.0});
  const std::vector<double> small = {1e-1, 1e-2, 1e-3};

  auto to_fourier_error = [&](double alpha) {
    const auto t = interp_transform(s1, alpha);
    const auto f = to_momentum(s1);
    const cplx phase = std::polar(1.0, -std::numbers::pi / 4);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) worst = std::max(worst, std::abs(t[k] - phase * f[k]));
    return worst;
  };
  auto to_identity_error = [&](double alpha) {
    const auto t = interp_transform(s1, alpha);
    double worst = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double x = g.point(j);
      worst = std::max(worst, std::abs(t[j] - std::polar(1.0, -0.5 * x * x) * s1[j]));
    }
    return worst;
  };

  for (bool to_zero : {true, false}) {
    const char* claim = to_zero ? "momentum_limit" : "position_limit";
    const std::string base = to_zero ? "interp_transform_alpha_to_0" : "interp_transform_alpha_to_1";
    std::vector<double> errs;
    sink.check(base, {claim, "interp_expansion"}, {}, 1e-2, [&](auto& params) {
      for (double d : small) errs.push_back(to_zero ? to_fourier_error(d) : to_identity_error(1.0 - d));
      params.emplace_back("distance_to_endpoint", join(small));
      params.emplace_back("max_errors", join(errs));
      return errs.back();
    });
    sink.check(base + "_monotone", {claim}, {{"max_errors", join(errs)}}, 1.0,
               [&](auto&) { return worst_ratio(errs); });
  }

  sink.check("rotation_theta_pi_2_is_fourier", {"momentum_limit", "rotation_operator"}, {{"state", "gaussian:s=1"}},
             1e-12, [&](auto&) {
               const auto r = rotation_transform(s1, std::numbers::pi / 2);
               const auto a = interp_transform(s1, 0.0);
               return max_abs_diff(r.samples(), a.samples());
             });

  // The kernel itself: continuity toward the plane-wave endpoint on |x| <= 5.
  {
    std::vector<double> errs;
    sink.check("interp_kernel_alpha_to_0", {"momentum_limit", "interp_kernel_formula"}, {{"lambda", "1"}}, 1e-2,
               [&](auto& params) {
                 for (double d : small) {
                   double worst = 0.0;
                   for (double x : g.points()) {
                     if (std::abs(x) > 5.0) continue;
                     const cplx limit = std::polar(kInvSqrt2Pi, std::numbers::pi / 4 + x);
                     worst = std::max(worst, std::abs(interp_kernel_value(d, 1.0, x) - limit));
                   }
                   errs.push_back(worst);
                 }
                 params.emplace_back("window", "|x|<=5");
                 params.emplace_back("max_errors", join(errs));
                 return errs.back();
               });
    sink.check("interp_kernel_alpha_to_0_monotone", {"momentum_limit"}, {{"max_errors", join(errs)}}, 1.0,
               [&](auto&) { return worst_ratio(errs); });
  }

  // ... and its concentration toward exp(i lambda^2/2) delta(x - lambda),
  // seen through <eta, psi> -> exp(-i lambda^2/2) psi(lambda).
  {
    const double lambda = 0.5;
    const double length = 16.0;
    std::vector<double> errs;
    sink.check("interp_kernel_alpha_to_1", {"position_limit", "interp_kernel_formula"},
               {{"lambda", num(lambda)}, {"length", num(length)}}, 1e-2, [&](auto& params) {
                 std::vector<double> sizes;
                 for (double d : small) {
                   const double ratio = (1.0 - d) / d;
                   std::size_t n = 1024;
                   while (ratio * (length / 2.0) * (length / static_cast<double>(n)) > std::numbers::pi) n *= 2;
                   const Grid fine = make_grid(n, length);
                   const auto psi = gaussian(fine, {1.0, 0.0, 0.0, 0.0});
                   const double lams[] = {lambda};
                   const cplx got = quadrature_oracle(psi, InterpFamily{1.0 - d}, lams)[0];
                   const double expect = hermite_function(0, lambda);
                   errs.push_back(std::abs(got - std::polar(expect, -0.5 * lambda * lambda)));
                   sizes.push_back(static_cast<double>(n));
                 }
                 params.emplace_back("grid_sizes", join(sizes));
                 params.emplace_back("errors", join(errs));
                 return errs.back();
               });
    sink.check("interp_kernel_alpha_to_1_monotone", {"position_limit"}, {{"errors", join(errs)}}, 1.0,
               [&](auto&) { return worst_ratio(errs); });
  }
}

inline void suite_uncertainty(ReportSink& sink, const Grid& g) {
  for (double c : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    sink.check("schrodinger_saturation", {"schrodinger_uncertainty", "correlation_operator"},
               {{"state", "gaussian:s=1,c=" + num(c)}}, 1e-8, [&](auto& params) {
                 const auto m = moments(gaussian(g, {1.0, 0.0, 0.0, c}));
                 const double exact = (1.0 + c * c) / 4.0;  // var_x = 1/2, var_p = (1 + c^2)/2
                 params.emplace_back("lhs", num(m.lhs));
                 params.emplace_back("rhs", num(m.rhs));
                 params.emplace_back("exact", num(exact));
                 return std::max({std::abs(m.lhs - m.rhs), std::abs(m.lhs - exact), std::abs(m.rhs - exact)});
               });
  }
  for (int k = 1; k <= 4; ++k) {
    sink.check("heisenberg_excess", {"schrodinger_uncertainty"}, {{"state", "hermite:k=" + std::to_string(k)}}, 0.0,
               [&](auto& params) {
                 const auto m = moments(hermite(g, k));
                 params.emplace_back("lhs", num(m.lhs));
                 params.emplace_back("rhs", num(m.rhs));
                 params.emplace_back("required_excess", "1");
                 // Observed is the shortfall of lhs - 1/4 below 1; passes when <= 0.
                 return 1.0 - (m.lhs - m.heisenberg_rhs);
               });
  }
}

inline void suite_delta_limit(ReportSink& sink, const Grid& g) {
  const double f0 = hermite_function(0, 0.0);
  std::vector<double> devs;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    // The first alias of the chirp sits at |x| = pi eps/dx; keep it >= 10
    // Gaussian widths away so it cannot reach the test function.
    std::size_t n = g.size();
    while (std::numbers::pi * eps / (g.length() / static_cast<double>(n)) < 10.0) n *= 2;
    const Grid fine = make_grid(n, g.length());

    auto pairing = [&] {
      const auto delta = fresnel_delta(fine, eps);
      const auto f = gaussian(fine, {1.0, 0.0, 0.0, 0.0});
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) acc += delta[j] * f[j];
      return acc * fine.spacing();
    };
    const ReportSink::Params params = {{"eps", num(eps)}, {"n", std::to_string(n)}, {"length", num(g.length())}};

    sink.check("fresnel_delta_scaling", {"fresnel_delta"}, params, 1.5, [&](auto& p) {
      const double dev = std::abs(pairing() - f0);
      devs.push_back(dev);
      const double predicted = eps * f0 / 4.0;
      p.emplace_back("deviation", num(dev));
      p.emplace_back("predicted", num(predicted));
      return std::max(dev / predicted, predicted / dev);
    });
    sink.check("fresnel_delta_closed_form", {"fresnel_delta"}, params, 1e-9, [&](auto&) {
      const cplx exact = f0 / std::sqrt(cplx{1.0, -eps / 2.0});
      return std::abs(pairing() - exact);
    });
  }
  sink.check("fresnel_delta_monotone", {"fresnel_delta"}, {{"deviations", join(devs)}}, 1.0,
             [&](auto&) { return worst_ratio(devs); });
}

inline double modulus_spread(const Wavefunction& w) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (cplx z : w.samples()) {
    lo = std::min(lo, std::abs(z));
    hi = std::max(hi, std::abs(z));
  }
  return hi - lo;
}

inline void suite_unbiasedness(ReportSink& sink, const Grid& g) {
  constexpr double tol = 1e-15;
  for (double p : {-3.0, 0.0, 1.7, std::numbers::pi / g.spacing()}) {
    sink.check("plane_wave_modulus_spread", {"unbiased_bases", "momentum_eigenfunction"}, {{"p", num(p)}}, tol,
               [&](auto&) { return modulus_spread(plane_wave(g, p)); });
  }
  for (double a : {-5.0, 0.0, 2.5}) {
    sink.check("position_kernel_in_momentum_modulus_spread", {"unbiased_bases", "position_eigenfunction_in_momentum"},
               {{"a", num(a)}}, tol, [&](auto&) { return modulus_spread(position_kernel_in_momentum(g, a)); });
  }
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    sink.check("interp_kernel_modulus_spread", {"unbiased_bases", "interp_kernel_formula"},
               {{"alpha", num(alpha)}, {"lambda", "0.7"}}, tol,
               [&](auto&) { return modulus_spread(interp_kernel(g, alpha, 0.7)); });
    sink.check("interp_kernel_modulus_value", {"interp_kernel_formula"}, {{"alpha", num(alpha)}, {"lambda", "0.7"}},
               tol, [&](auto&) {
                 const double expect = 1.0 / std::sqrt(2.0 * std::numbers::pi * (1.0 - alpha));
                 return std::abs(std::abs(interp_kernel(g, alpha, 0.7)[g.size() / 3]) - expect);
               });
  }

  // Transforming one basis into the other gives lattice deltas of height 1/spacing.
  const Grid k = g.dual();
  for (long m : {-7L, 0L, 12L}) {
    sink.check("momentum_eigenfunction_is_momentum_delta", {"momentum_eigenfunction_in_momentum"},
               {{"p", num(static_cast<double>(m) * k.spacing())}}, 1e-12, [&](auto&) {
                 const auto pw = plane_wave(g, static_cast<double>(m) * k.spacing());
                 const auto spec = unitary_dft(pw.samples(), g);
                 const std::size_t at = g.size() / 2 + static_cast<std::size_t>(m);
                 double worst = 0.0;
                 for (std::size_t j = 0; j < spec.size(); ++j) {
                   const double expect = j == at ? 1.0 / k.spacing() : 0.0;
                   worst = std::max(worst, std::abs(spec[j] - expect) * k.spacing());
                 }
                 return worst;
               });
    sink.check("position_eigenfunction_is_position_delta", {"position_eigenfunction"},
               {{"a", num(static_cast<double>(m) * g.spacing())}}, 1e-12, [&](auto&) {
                 const auto kernel = position_kernel_in_momentum(g, static_cast<double>(m) * g.spacing());
                 const auto back = from_momentum(kernel);
                 const std::size_t at = g.size() / 2 + static_cast<std::size_t>(m);
                 double worst = 0.0;
                 for (std::size_t j = 0; j < back.size(); ++j) {
                   const double expect = j == at ? 1.0 / g.spacing() : 0.0;
                   worst = std::max(worst, std::abs(back[j] - expect) * g.spacing());
                 }
                 return worst;
               });
  }

  // Generalized eigenfunctions are not normalizable: the grid norm grows
  // linearly with the box, ||phi_p||^2 = L/(2 pi).
  sink.check("plane_wave_norm_grows_with_length", {"momentum_eigenfunction"}, {{"p", "1"}}, 1e-12, [&](auto& params) {
    std::vector<double> ratios;
    for (double factor : {1.0, 2.0, 4.0}) {
      const Grid big = make_grid(g.size() * static_cast<std::size_t>(factor), g.length() * factor);
      ratios.push_back(plane_wave(big, 1.0).norm2() / (big.length() / (2.0 * std::numbers::pi)));
    }
    params.emplace_back("norm_over_L_2pi", join(ratios));
    double worst = 0.0;
    for (double r : ratios) worst = std::max(worst, std::abs(r - 1.0));
    return worst;
  });
}

inline void suite_oracle_agreement(ReportSink& sink, const Grid& g) {
  const std::vector<std::pair<std::string, GaussianSpec>> states = {
      {"gaussian:s=1", {1.0, 0.0, 0.0, 0.0}},
      {"gaussian:s=1,c=2", {1.0, 0.0, 0.0, 2.0}},
  };
  for (const auto& [name, spec] : states) {
    sink.check("plane_wave_oracle", {"momentum_eigenfunction", "position_expansion"}, {{"state", name}}, 1e-10,
               [&](auto&) {
                 const auto psi = gaussian(g, spec);
                 const auto fast = to_momentum(psi);
                 const auto ps = fast.grid().points();
                 return max_abs_diff(fast.samples(), quadrature_oracle(psi, PlaneWaveFamily{}, ps));
               });
    sink.check("interp_oracle", {"interp_kernel_formula", "interp_expansion"}, {{"state", name}, {"alpha", "0.5"}},
               1e-8, [&](auto&) {
                 const auto psi = gaussian(g, spec);
                 const auto fast = interp_transform(psi, 0.5);
                 const auto ls = fast.grid().points();
                 return max_abs_diff(fast.samples(), quadrature_oracle(psi, InterpFamily{0.5}, ls));
               });
    sink.check("rotation_oracle", {"rotation_operator"}, {{"state", name}, {"theta", num(std::numbers::pi / 6)}},
               1e-8, [&](auto&) {
                 const auto psi = gaussian(g, spec);
                 const auto fast = rotation_transform(psi, std::numbers::pi / 6);
                 const auto ls = fast.grid().points();
                 return max_abs_diff(fast.samples(), quadrature_oracle(psi, RotationFamily{std::numbers::pi / 6}, ls));
               });
  }

  const LogWindow w = wide_log_window(g);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    const char* claim = par == Parity::Even ? "correlation_even_kernel" : "correlation_odd_kernel";
    sink.check("correlation_oracle", {claim}, {{"state", "gaussian:s=0.7,x0=1.5,p0=0.7"}, {"parity", to_string(par)}},
               1e-5, [&](auto&) {
                 const auto psi = gaussian(g, {0.7, 1.5, 0.7, 0.0});
                 const auto spec = correlation_transform(psi, w, kWideGammaCount);
                 const auto& channel = par == Parity::Even ? spec.even : spec.odd;
                 std::vector<double> gammas;
                 std::vector<cplx> fast;
                 for (std::size_t k = kWideGammaCount / 2 - 8; k <= kWideGammaCount / 2 + 8; ++k) {
                   gammas.push_back(spec.gamma_grid.point(k));
                   fast.push_back(channel[k]);
                 }
                 return max_abs_diff(fast, quadrature_oracle(psi, CorrelationFamily{par, w}, gammas));
               });
  }

  sink.check("correlation_mean_from_spectrum", {"correlation_spectrum", "correlation_eigen_equation"},
             {{"state", "gaussian:s=1,c=2"}}, 1e-5, [&](auto& params) {
               const auto psi = gaussian(g, {1.0, 0.0, 0.0, 2.0});
               const double from_spectrum = correlation_transform(psi, w, kWideGammaCount).mean_gamma();
               const double from_operator = moments(psi).mean_c;
               params.emplace_back("spectral", num(from_spectrum));
               params.emplace_back("operator", num(from_operator));
               return std::abs(from_spectrum - from_operator);
             });
  for (const auto& st : factory_states()) {
    sink.check("correlation_conjugation_rule", {"correlation_momentum_form"}, {{"state", st.name}}, 1e-8,
               [&](auto&) { return conjugation_rule_defect(st.make(g)); });
  }

  sink.check("fourier_conjugate_even_gamma_0", {"correlation_momentum_form", "correlation_even_kernel"},
             {{"gamma", "0"}, {"parity", "even"}, {"window", "L/8"}}, 0.05, [&](auto& params) {
               const auto d = fourier_conjugate_property(g, 0.0, Parity::Even);
               params.emplace_back("aligned_defect", num(d.aligned_defect));
               params.emplace_back("phase", num(d.phase));
               return d.defect;
             });

  // Gram matrix of lattice-sampled interp kernels. Against the full box it
  // is the lattice delta, identity / d lambda; against a Gaussian window of
  // width s (contained, s = L/16) it is the window's Fourier transform, sqrt(2 pi) s exp(-s^2 dp^2/2),
  // which narrows to delta(lambda - lambda') as s grows.
  const double alpha = 0.5;
  const double beta = 1.0 - alpha;
  const Grid lam = g.dual().scaled(beta);
  std::vector<double> lambdas;
  for (std::size_t k = g.size() / 2 - 4; k < g.size() / 2 + 4; ++k) lambdas.push_back(lam.point(k));
  auto gram = [&](const std::function<double(double)>& window) {
    std::vector<Wavefunction> ks;
    for (double l : lambdas) ks.push_back(interp_kernel(g, alpha, l));
    std::vector<std::vector<cplx>> out(ks.size(), std::vector<cplx>(ks.size()));
    for (std::size_t a = 0; a < ks.size(); ++a)
      for (std::size_t b = 0; b < ks.size(); ++b) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < g.size(); ++j) acc += std::conj(ks[a][j]) * ks[b][j] * window(g.point(j));
        out[a][b] = acc * g.spacing();
      }
    return out;
  };
  sink.check("interp_gram_box", {"delta_normalization"}, {{"alpha", num(alpha)}}, 1e-12, [&](auto&) {
    const auto m = gram([](double) { return 1.0; });
    double worst = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        worst = std::max(worst, std::abs(m[a][b] * lam.spacing() - (a == b ? 1.0 : 0.0)));
    return worst;
  });
  sink.check("interp_gram_window", {"delta_normalization"}, {{"alpha", num(alpha)}, {"window", "L/16"}}, 1e-10,
             [&](auto&) {
               const double s = g.length() / 16.0;
               const auto m = gram([s](double x) { return std::exp(-x * x / (2.0 * s * s)); });
               const auto fam = ChirpFamily::interp(alpha);
               double worst = 0.0;
               for (std::size_t a = 0; a < m.size(); ++a)
                 for (std::size_t b = 0; b < m.size(); ++b) {
                   const double dl = (lambdas[b] - lambdas[a]) / beta;
                   const double mag = std::sqrt(2.0 * std::numbers::pi) * s * std::exp(-0.5 * s * s * dl * dl) /
                                      (2.0 * std::numbers::pi * beta);
                   const cplx expect =
                       std::polar(mag, fam.q * (lambdas[b] * lambdas[b] - lambdas[a] * lambdas[a]));
                   worst = std::max(worst, std::abs(m[a][b] - expect) / m[a][a].real());
                 }
               return worst;
             });
}

}  // namespace detail

/// Runs one named suite (or "all") on grid g and returns its reports in a
/// fixed order. Checks that need finer lattices derive them from g.
inline std::vector<CheckReport> run_suite(const std::string& suite, const Grid& g) {
  detail::ReportSink sink;
  auto run = [&](const std::string& name) {
    if (name == "commutators") detail::suite_commutators(sink, g);
    else if (name == "eigen_residuals") detail::suite_eigen_residuals(sink, g);
    else if (name == "roundtrips") detail::suite_roundtrips(sink, g);
    else if (name == "limits") detail::suite_limits(sink, g);
    else if (name == "uncertainty") detail::suite_uncertainty(sink, g);
    else if (name == "delta_limit") detail::suite_delta_limit(sink, g);
    else if (name == "unbiasedness") detail::suite_unbiasedness(sink, g);
    else if (name == "oracle_agreement") detail::suite_oracle_agreement(sink, g);
  };
  if (suite == "all") {
    for (const auto& name : suite_names()) run(name);
  } else {
    const auto& names = suite_names();
    detail::require(std::find(names.begin(), names.end(), suite) != names.end(), "known_suite",
                    "unknown suite '" + suite + "'");
    run(suite);
  }
  return sink.take();
}

}  // namespace qrep
