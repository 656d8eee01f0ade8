#include "asympartita/quadrature.hpp"

#include <gtest/gtest.h>

using namespace asympartita;

namespace {
const Precision P{192};
}

TEST(QuadratureConfig, RejectsBadTolerances) {
  EXPECT_THROW(QuadratureConfig(0, 1e-10, 1e-10), DomainError);
  EXPECT_THROW(QuadratureConfig(5, 0.0, 1e-10), DomainError);
  EXPECT_THROW(QuadratureConfig(5, 1e-10, -1.0), DomainError);
}

TEST(TanhSinh, EndpointSingularities) {
  QuadratureConfig cfg(12, 1e-40, 1e-40, P);
  // ∫_0^1 ln(x) dx = -1, ∫_0^1 1/sqrt(x(1-x)) dx = pi
  auto r1 = tanh_sinh([](const PrecReal& x, const PrecReal&, const PrecReal&) { return log(x); },
                      PrecReal(0L, P), PrecReal(1L, P), cfg);
  EXPECT_TRUE(r1.converged);
  EXPECT_LT(abs(r1.value + 1L).to_double(), 1e-40);
  auto r2 = tanh_sinh(
      [](const PrecReal&, const PrecReal& da, const PrecReal& db) { return 1.0 / sqrt(da * db); },
      PrecReal(0L, P), PrecReal(1L, P), cfg);
  EXPECT_TRUE(r2.converged);
  EXPECT_LT(abs(r2.value - const_pi(P)).to_double(), 1e-35);
  EXPECT_GT(r2.evaluations, 0u);
}

TEST(TanhSinh, ErrorEstimateCoversTrueError) {
  // ∫_0^2 e^x dx at loose tolerance: the estimate must still bound the error.
  QuadratureConfig cfg(12, 1e-12, 1e-12, P);
  auto r = tanh_sinh([](const PrecReal& x, const PrecReal&, const PrecReal&) { return exp(x); }, PrecReal(0L, P),
                     PrecReal(2L, P), cfg);
  PrecReal exact = expm1(PrecReal(2L, P));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(abs(r.value - exact), r.error_estimate);
}

TEST(HalfLine, GaussianAndExponential) {
  QuadratureConfig cfg(12, 1e-40, 1e-40, P);
  auto r = integrate_half_line([](const PrecReal& x) { return exp(-square(x)); }, cfg);
  EXPECT_LT(abs(r.value - sqrt(const_pi(P)) / 2L).to_double(), 1e-38);
  auto r2 = integrate_half_line([](const PrecReal& x) { return x * exp(-x); }, cfg);
  EXPECT_LT(abs(r2.value - 1L).to_double(), 1e-38);
}

TEST(GaussLegendre, NodesIntegratePolynomialsExactly) {
  auto rule = GaussLegendreRule::make(20, P);
  for (int deg = 0; deg <= 39; ++deg) {
    PrecReal v = rule.apply([deg](const PrecReal& x) { return pow(x, static_cast<long>(deg)); }, PrecReal(-1L, P),
                            PrecReal(1L, P), P);
    double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(v.to_double(), exact, 1e-40) << deg;
  }
}

TEST(GaussLegendre, AdaptivePeak) {
  // Narrow Lorentzian: ∫_{-1}^{1} a/(a^2 + x^2) dx = 2 atan(1/a)
  const double a = 1e-4;
  QuadratureConfig cfg(400, 1e-30, 1e-30, P);
  std::vector<PrecReal> b{PrecReal(-1L, P), PrecReal(0.3, P), PrecReal(1L, P)};
  PrecReal aa(a, P);
  auto r = adaptive_gauss_legendre([&](const PrecReal& x) { return aa / (square(aa) + square(x)); }, b, cfg);
  PrecReal exact(P);
  mpfr_atan(exact.raw(), (1.0 / aa).get(), MPFR_RNDN);
  exact *= 2L;
  EXPECT_TRUE(r.converged);
  EXPECT_LE(abs(r.value - exact), r.error_estimate);
  EXPECT_LT(r.error_estimate.to_double(), 1e-29);
}

TEST(PeriodicTrapezoid, FourierCoefficient) {
  // mean of e^{cos theta} cos(3 theta) = I_3(1)
  QuadratureConfig cfg(10, 1e-45, 1e-45, P);
  auto r = periodic_trapezoid(
      [](const PrecReal& t) {
        auto [s, c] = sin_cos(t);
        return PrecComplex(exp(c) * cos(3L * t), PrecReal(s.precision()));
      },
      cfg);
  // I_3(1) = sum_k (1/2)^{2k+3}/(k! (k+3)!)
  PrecReal i3(P);
  for (long k = 0; k < 60; ++k) {
    PrecReal f1(P), f2(P);
    mpfr_fac_ui(f1.raw(), k, MPFR_RNDN);
    mpfr_fac_ui(f2.raw(), k + 3, MPFR_RNDN);
    i3 += pow(PrecReal(0.5, P), 2 * k + 3) / (f1 * f2);
  }
  EXPECT_TRUE(r.converged);
  EXPECT_LE(abs(r.value - i3), r.error_estimate + i3.ulp() * 16L);
  EXPECT_LT(abs(r.value - i3).to_double(), 1e-45);
}

TEST(PeriodicTrapezoid, BitStableAcrossThreadCounts) {
  auto f = [](const PrecReal& t) {
    auto [s, c] = sin_cos(t);
    return PrecComplex(exp(2L * c) * cos(5L * t), exp(c) * s);
  };
  QuadratureConfig one(8, 1e-40, 1e-40, P);
  QuadratureConfig four = one;
  four.threads = 4;
  auto a = periodic_trapezoid(f, one), b = periodic_trapezoid(f, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.imag, b.imag);
  EXPECT_EQ(a.error_estimate, b.error_estimate);
}

TEST(PeriodicTrapezoid, MoreSubdivisionsStayWithinEstimate) {
  auto f = [](const PrecReal& t) {
    auto [s, c] = sin_cos(t);
    return PrecComplex(exp(3L * c), PrecReal(s.precision()));
  };
  QuadratureConfig a(6, 1e-30, 1e-30, P), b(12, 1e-30, 1e-30, P);
  auto ra = periodic_trapezoid(f, a), rb = periodic_trapezoid(f, b);
  ASSERT_TRUE(ra.converged);
  EXPECT_LE(abs(ra.value - rb.value), ra.error_estimate);
}

TEST(PeriodicTrapezoid, NonConvergenceIsReported) {
  // Needs far more than 64 * 2 nodes.
  auto f = [](const PrecReal& t) { return PrecComplex(exp(200L * cos(t)) / exp(PrecReal(200L, P)), PrecReal(P)); };
  QuadratureConfig cfg(1, 1e-30, 1e-30, P);
  auto r = periodic_trapezoid(f, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(detail::require_converged(r, "test"), QuadratureError);
}
