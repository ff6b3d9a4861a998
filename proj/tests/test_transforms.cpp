#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qrep/states.hpp"
#include "qrep/transforms.hpp"

using namespace qrep;

namespace {

const Grid& grid() {
  static const Grid g = make_grid(1024, 40.0);
  return g;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

// <xi_gamma, h_0> and <xi_gamma, h_1> from the Mellin integral of
// x^(s-1) exp(-x^2/2), s = 1/2 - i gamma, evaluated with mpmath (30 digits).
struct MellinValue {
  double gamma;
  cplx even_h0;
  cplx odd_h1;
};
constexpr MellinValue kMellin[] = {
    {0.0, {0.91357913815611682, 0.0}, {0.61755961797295862, 0.0}},
    {0.5, {0.48966987061600175, 0.38443517373537152}, {0.5700457599097472, 0.048654611243437182}},
    {-1.25, {0.17980086795913494, -0.2050480563750703}, {0.40910445121594391, -0.034944120822499554}},
};

}  // namespace

TEST(Fourier, GaussianIsSelfDual) {
  const auto psi = gaussian(grid(), {});
  const auto phi = to_momentum(psi);
  EXPECT_EQ(phi.grid(), grid().dual());
  EXPECT_EQ(phi.label(), Representation::momentum());
  for (std::size_t k = 0; k < phi.size(); ++k)
    EXPECT_NEAR(std::abs(phi[k] - hermite_function(0, phi.grid().point(k))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phi[512]), std::pow(std::numbers::pi, -0.25), 1e-15);
}

TEST(Fourier, HermiteEigenvalues) {
  // F h_k = (-i)^k h_k
  for (int k = 0; k <= 6; ++k) {
    const auto phi = to_momentum(hermite(grid(), k));
    const cplx ev = std::pow(cplx{0, -1}, k);
    for (std::size_t j = 0; j < phi.size(); ++j)
      EXPECT_NEAR(std::abs(phi[j] - ev * hermite_function(k, phi.grid().point(j))), 0.0, 1e-13) << k;
  }
}

TEST(Fourier, RoundTripAndNorm) {
  for (const auto& psi : {gaussian(grid(), {0.7, 1.5, 0.7, 0.0}), gaussian(grid(), {2.0, -1.0, 0.0, -1.0}),
                          hermite(grid(), 3)}) {
    const auto phi = to_momentum(psi);
    EXPECT_NEAR(phi.norm2(), psi.norm2(), 1e-12);
    EXPECT_LE(max_diff(from_momentum(phi).samples(), psi.samples()), 1e-12);
  }
}

TEST(Fourier, LabelChecks) {
  const auto psi = gaussian(grid(), {});
  EXPECT_THROW(from_momentum(psi), PreconditionError);
  EXPECT_THROW(to_momentum(to_momentum(psi)), PreconditionError);
}

TEST(Interp, EndpointsAndUnitarity) {
  const auto psi = gaussian(grid(), {0.7, 1.5, 0.7, 0.0});
  const auto f = to_momentum(psi);
  const auto t0 = interp_transform(psi, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k)
    EXPECT_NEAR(std::abs(t0[k] - std::polar(1.0, -std::numbers::pi / 4) * f[k]), 0.0, 1e-15);
  const auto t1 = interp_transform(psi, 1.0);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double x = grid().point(j);
    EXPECT_NEAR(std::abs(t1[j] - std::polar(1.0, -x * x / 2) * psi[j]), 0.0, 1e-15);
  }
  for (double alpha : {0.001, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999})
    EXPECT_NEAR(interp_transform(psi, alpha).norm2(), 1.0, 1e-10) << alpha;
}

TEST(Interp, AgreesWithOracle) {
  const auto psi = gaussian(grid(), {1.0, 0.0, 0.0, 2.0});
  const auto fast = interp_transform(psi, 0.5);
  std::vector<double> ls;
  std::vector<cplx> sub;
  for (std::size_t k = 0; k < fast.size(); k += 7) {
    ls.push_back(fast.grid().point(k));
    sub.push_back(fast[k]);
  }
  EXPECT_LE(max_diff(sub, quadrature_oracle(psi, InterpFamily{0.5}, ls)), 1e-8);
}

// The sampled-kernel oracle needs a resolvable chirp, which is exactly when the
// Fresnel path is not taken. Both paths are checked against the Gaussian
// integral of conj(eta) h_0 instead:
//   pi^(-1/4) exp(-i(pi/4 + q l^2)) (b - i a)^(-1/2) exp(-l^2/(2 b (b - i a))).
TEST(Interp, BothPathsMatchGaussianClosedForm) {
  const auto psi = gaussian(grid(), {});
  for (double alpha : {0.2, 0.5, 0.8, 0.95, 0.99}) {
    const auto fam = ChirpFamily::interp(alpha);
    const cplx z{fam.b, -fam.a};
    const auto t = interp_transform(psi, alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double l = t.grid().point(k);
      const cplx expect = std::pow(std::numbers::pi, -0.25) *
                          std::polar(1.0, -(std::numbers::pi / 4 + fam.q * l * l)) / std::sqrt(z) *
                          std::exp(-l * l / (2.0 * fam.b * z));
      worst = std::max(worst, std::abs(t[k] - expect));
    }
    EXPECT_LE(worst, 1e-10) << alpha;
  }
  // the two lattices: (1 - alpha) p_k on the chirp path, alpha x_j on the Fresnel path
  EXPECT_EQ(interp_transform(psi, 0.5).grid(), grid().dual().scaled(0.5));
  EXPECT_EQ(interp_transform(psi, 0.99).grid(), grid().scaled(0.99));
}

TEST(Interp, ModulusOfTransformMatchesMomentumAtAlphaZero) {
  const auto psi = gaussian(grid(), {});
  const auto a = interp_transform(psi, 0.0);
  const auto b = to_momentum(psi);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(std::abs(a[k]), std::abs(b[k]), 1e-15);
}

TEST(Interp, LimitsImproveMonotonically) {
  const auto psi = gaussian(grid(), {});
  const auto f = to_momentum(psi);
  double prev0 = 1e300;
  double prev1 = 1e300;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    const auto t = interp_transform(psi, d);
    double e0 = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
      e0 = std::max(e0, std::abs(t[k] - std::polar(1.0, -std::numbers::pi / 4) * f[k]));
    const auto u = interp_transform(psi, 1 - d);
    double e1 = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double x = grid().point(j);
      e1 = std::max(e1, std::abs(u[j] - std::polar(1.0, -x * x / 2) * psi[j]));
    }
    EXPECT_LT(e0, prev0);
    EXPECT_LT(e1, prev1);
    prev0 = e0;
    prev1 = e1;
  }
  EXPECT_LE(prev0, 1e-2);
  EXPECT_LE(prev1, 1e-2);
}

TEST(Rotation, QuarterTurnIsFourierAndOracle) {
  const auto psi = gaussian(grid(), {0.7, 1.5, 0.7, 0.0});
  EXPECT_LE(max_diff(rotation_transform(psi, std::numbers::pi / 2).samples(), interp_transform(psi, 0.0).samples()),
            0.0);
  for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, 1.3}) {
    const auto fast = rotation_transform(psi, theta);
    EXPECT_NEAR(fast.norm2(), 1.0, 1e-10);
    std::vector<double> ls;
    std::vector<cplx> sub;
    for (std::size_t k = 3; k < fast.size(); k += 11) {
      ls.push_back(fast.grid().point(k));
      sub.push_back(fast[k]);
    }
    EXPECT_LE(max_diff(sub, quadrature_oracle(psi, RotationFamily{theta}, ls)), 1e-8) << theta;
  }
  EXPECT_THROW(rotation_transform(psi, 0.0), PreconditionError);
}

TEST(Rotation, HermiteFunctionsPickUpPhaseOnly) {
  // |rotation coefficient| of h_k is |h_k| on the output lattice
  const auto psi = hermite(grid(), 2);
  const auto t = rotation_transform(psi, std::numbers::pi / 3);
  for (std::size_t k = 0; k < t.size(); ++k)
    EXPECT_NEAR(std::abs(t[k]), std::abs(hermite_function(2, t.grid().point(k))), 1e-10);
}

TEST(Correlation, ParityChannelsSeparate) {
  const auto even = correlation_transform(hermite(grid(), 2));
  const auto odd = correlation_transform(hermite(grid(), 1));
  for (std::size_t k = 0; k < even.odd.size(); ++k) {
    EXPECT_LE(std::abs(even.odd[k]), 1e-14);
    EXPECT_LE(std::abs(odd.even[k]), 1e-14);
  }
}

TEST(Correlation, ParsevalAndRoundTrip) {
  const auto psi = gaussian(grid(), {});
  const LogWindow w{-14.0, std::log(18.0)};
  const auto spec = correlation_transform(psi, w, 2048);
  EXPECT_LE(std::abs(spec.norm2() - (1.0 - spec.tail_mass)), 1e-6);
  const auto back = correlation_inverse(spec, grid());
  for (std::size_t j = 0; j < grid().size(); ++j) {
    const double r = std::abs(grid().point(j));
    if (r >= 4 * grid().spacing() && r <= 10.0) {
      EXPECT_NEAR(std::abs(back[j] - psi[j]), 0.0, 1e-5);
    }
  }
}

TEST(Correlation, InverseRefusesLargeTail) {
  const auto psi = gaussian(grid(), {});
  const auto spec = correlation_transform(psi, {-1.0, std::log(18.0)}, 512);
  try {
    correlation_inverse(spec, grid());
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.precondition(), "tail_mass");
  }
}

TEST(Correlation, MatchesMellinClosedForm) {
  const auto h0 = hermite(grid(), 0);
  const auto h1 = hermite(grid(), 1);
  for (const auto& m : kMellin) {
    const double g[] = {m.gamma};
    EXPECT_NEAR(std::abs(quadrature_oracle(h0, CorrelationFamily{Parity::Even, std::nullopt}, g)[0] - m.even_h0), 0.0,
                5e-7);
    EXPECT_NEAR(std::abs(quadrature_oracle(h1, CorrelationFamily{Parity::Odd, std::nullopt}, g)[0] - m.odd_h1), 0.0,
                5e-7);
  }
  // gamma = 0 sits on the transform lattice; a deep window removes the tail
  const LogWindow deep{-30.0, std::log(18.0)};
  const auto s0 = correlation_transform(h0, deep, 4096);
  const auto s1 = correlation_transform(h1, deep, 4096);
  ASSERT_EQ(s0.gamma_grid.point(2048), 0.0);
  EXPECT_NEAR(std::abs(s0.even[2048] - kMellin[0].even_h0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(s1.odd[2048] - kMellin[0].odd_h1), 0.0, 1e-6);
}

TEST(Correlation, WindowedOracleMatchesTransform) {
  const auto psi = gaussian(grid(), {0.7, 1.5, 0.7, 0.0});
  const LogWindow w{-14.0, std::log(18.0)};
  const auto spec = correlation_transform(psi, w, 2048);
  std::vector<double> gs;
  std::vector<cplx> fe;
  std::vector<cplx> fo;
  for (std::size_t k = 1000; k <= 1048; k += 4) {
    gs.push_back(spec.gamma_grid.point(k));
    fe.push_back(spec.even[k]);
    fo.push_back(spec.odd[k]);
  }
  EXPECT_LE(max_diff(fe, quadrature_oracle(psi, CorrelationFamily{Parity::Even, w}, gs)), 1e-5);
  EXPECT_LE(max_diff(fo, quadrature_oracle(psi, CorrelationFamily{Parity::Odd, w}, gs)), 1e-5);
}

TEST(Correlation, MeanFromSpectrum) {
  const auto psi = gaussian(grid(), {1.0, 0.0, 0.0, 2.0});
  const auto spec = correlation_transform(psi, {-14.0, std::log(18.0)}, 2048);
  EXPECT_NEAR(spec.mean_gamma(), 1.0, 1e-5);
}

TEST(Correlation, ConjugationRule) {
  for (const auto& psi : {gaussian(grid(), {}), gaussian(grid(), {1.0, 0.0, 0.0, 2.0}),
                          gaussian(grid(), {0.7, 1.5, 0.7, 0.0}), hermite(grid(), 3)})
    EXPECT_LE(conjugation_rule_defect(psi), 1e-8);
}

TEST(Correlation, FourierConjugateUpToPhase) {
  const auto even0 = fourier_conjugate_property(grid(), 0.0, Parity::Even);
  EXPECT_LE(even0.defect, 0.05);
  EXPECT_NEAR(even0.phase, 0.0, 1e-3);
  const auto odd0 = fourier_conjugate_property(grid(), 0.0, Parity::Odd);
  EXPECT_LE(odd0.aligned_defect, 0.05);
  EXPECT_NEAR(odd0.phase, -std::numbers::pi / 2, 1e-2);
  for (double gamma : {-2.0, 1.0}) {
    for (Parity par : {Parity::Even, Parity::Odd}) EXPECT_LE(fourier_conjugate_property(grid(), gamma, par).aligned_defect, 0.05);
  }
}

TEST(Transforms, Determinism) {
  const auto psi = gaussian(grid(), {0.7, 1.5, 0.7, 0.0});
  const auto a = interp_transform(psi, 0.3);
  const auto b = interp_transform(psi, 0.3);
  EXPECT_EQ(max_diff(a.samples(), b.samples()), 0.0);
  const auto c = correlation_transform(psi);
  const auto d = correlation_transform(psi);
  EXPECT_EQ(max_diff(c.even, d.even), 0.0);
  EXPECT_EQ(c.tail_mass, d.tail_mass);
}
