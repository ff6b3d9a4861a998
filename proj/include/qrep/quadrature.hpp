#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace qrep::detail {

// Composite 10-point Gauss-Legendre over consecutive breakpoints.
template <class F>
std::complex<double> gauss_panels(F&& f, const std::vector<double>& breaks) {
  using rule = boost::math::quadrature::gauss<double, 10>;
  const auto& nodes = rule::abscissa();
  const auto& weights = rule::weights();
  std::complex<double> total{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::complex<double> panel{0.0, 0.0};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      panel += weights[k] * (f(mid + half * nodes[k]) + f(mid - half * nodes[k]));
    }
    total += half * panel;
  }
  return total;
}

// Breakpoints on [lo, hi] that double geometrically from lo up to `knee`,
// then advance by at most `step`. Resolves x^(-1/2)-type behaviour near 0.
inline std::vector<double> graded_breaks(double lo, double knee, double hi, double step) {
  std::vector<double> b{lo};
  double x = lo;
  while (x < knee && x < hi) {
    x = std::min({2.0 * x, knee, hi});
    b.push_back(x);
  }
  while (x < hi) {
    x = std::min(x + step, hi);
    b.push_back(x);
  }
  return b;
}

// Simpson's rule on [lo, hi] with an even number m of intervals.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t m) {
  if (hi <= lo) return 0.0;
  if (m % 2) ++m;
  const double h = (hi - lo) / static_cast<double>(m);
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return acc * h / 3.0;
}

}  // namespace qrep::detail
