#include "asympartita/special_fn.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asympartita;

namespace {
const Precision P256{256};

PrecReal mpfr_zeta3(Precision p) {
  PrecReal z(p);
  mpfr_zeta_ui(z.raw(), 3, MPFR_RNDN);
  return z;
}
}  // namespace

TEST(Dilog, SpecialValues) {
  PrecReal pi = const_pi(P256);
  EXPECT_TRUE(dilog(PrecReal(0L, P256)).is_zero());
  EXPECT_LE(abs(dilog(PrecReal(1L, P256)) - square(pi) / 6L), pow2(-248, P256));
  EXPECT_LE(abs(dilog(PrecReal(-1L, P256)) + square(pi) / 12L), pow2(-248, P256));
  // Li2(1/2) = pi^2/12 - ln^2(2)/2
  PrecReal half_exact = square(pi) / 12L - square(const_log2(P256)) / 2L;
  EXPECT_LE(abs(dilog(PrecReal(0.5, P256)) - half_exact), pow2(-248, P256));
  EXPECT_THROW(dilog(PrecReal(1.0001, P256)), DomainError);
  EXPECT_THROW(dilog(PrecReal(-1.5, P256)), DomainError);
}

TEST(Dilog, MatchesMpfrOnGrid) {
  // MPFR's li2 is an independent implementation.
  for (int i = -20; i <= 20; ++i) {
    PrecReal x(i / 20.0, P256);
    PrecReal ref(P256);
    mpfr_li2(ref.raw(), x.get(), MPFR_RNDN);
    EXPECT_LE(abs(dilog(x) - ref), pow2(-248, P256)) << "x=" << i / 20.0;
  }
}

TEST(Dilog, RoutesAgreeOnOverlap) {
  for (double m : {0.4, 0.45, 0.5, 0.55, 0.6}) {
    PrecReal x(m, P256);
    PrecReal series = detail::dilog_series(x, P256);
    EXPECT_LE(abs(series - detail::dilog_reflection(x, P256)), pow2(-240, P256)) << m;
    PrecReal nx(-m, P256);
    EXPECT_LE(abs(detail::dilog_series(nx, P256) - detail::dilog_landen(nx, P256)), pow2(-240, P256)) << -m;
  }
}

TEST(Dilog, DerivativeIdentityWithQuadraticError) {
  for (double a : {0.1, 0.3, 0.5, 0.9}) {
    PrecReal x(a, P256);
    PrecReal exact = -log1p(-x) / x;
    auto err = [&](double h) {
      PrecReal hh(h, P256);
      PrecReal d = (dilog(x + hh) - dilog(x - hh)) / (2L * hh);
      return abs(d - exact).to_double();
    };
    const double e1 = err(1e-3), e2 = err(5e-4);
    EXPECT_GT(e1 / e2, 3.6) << a;
    EXPECT_LT(e1 / e2, 4.4) << a;
  }
}

TEST(Zeta3, MatchesMpfr) {
  for (unsigned long bits : {64ul, 256ul, 512ul}) {
    Precision p{bits};
    EXPECT_LE(abs(zeta3(p) - mpfr_zeta3(p)), mpfr_zeta3(p).ulp() * 2L) << bits;
  }
  EXPECT_NEAR(zeta3().to_double(), 1.2020569031595942, 1e-16);
}

TEST(BoseIntegral, ClosedFormsAndQuadrature) {
  auto b1 = bose_integral(1, P256);
  EXPECT_NEAR(b1.closed_form.to_double(), 1.6449340668482264, 1e-15);
  EXPECT_TRUE(b1.agree());
  EXPECT_LT(b1.difference(), 1e-20);
  auto b2 = bose_integral(2, P256);
  EXPECT_NEAR(b2.closed_form.to_double(), 2.4041138063191885, 1e-15);
  EXPECT_TRUE(b2.agree());
  EXPECT_LT(b2.difference(), 1e-20);
  EXPECT_THROW(bose_integral(3, P256), DomainError);
}

TEST(BoseIntegral, SquareAndConstantAlgebra) {
  auto sq = bose_square_integral(P256);
  EXPECT_NEAR(sq.closed_form.to_double(), 0.88575432737726430, 1e-15);
  EXPECT_TRUE(sq.agree());
  EXPECT_LT(sq.difference(), 1e-20);
  PrecReal identity = bose_integral(1, P256).closed_form * 2L - sq.closed_form - 2L * zeta3(P256);
  EXPECT_LE(abs(identity), pow2(-248, P256));
}

TEST(BoseIntegral, TiltedSquareIsSigmaSquared) {
  for (double beta : {0.01, 1.0, 3.0}) {
    PrecReal b(beta, P256);
    PrecReal r = -expm1(-b);
    auto t = tilted_bose_square_integral(r);
    PrecReal sigma_sq = expm1(b) - b;
    EXPECT_LE(abs(t.closed_form - sigma_sq), sigma_sq * pow2(-240, P256)) << beta;
    EXPECT_TRUE(t.agree()) << beta;
    EXPECT_LT(abs(t.quadrature.value - sigma_sq).to_double(), 1e-10 * sigma_sq.to_double()) << beta;
  }
}

TEST(BoseIntegral, LogOneMinusExpIsMinusZeta2) {
  auto l = log_one_minus_exp_integral(P256);
  EXPECT_NEAR(l.closed_form.to_double(), -1.6449340668482264, 1e-15);
  EXPECT_TRUE(l.agree());
  EXPECT_LT(l.difference(), 1e-20);
}

TEST(SineProductLogSum, SmallAndLarge) {
  auto one = sine_product_log_sum(1);
  EXPECT_NEAR(one.value.to_double(), -std::log(0.75), 1e-16);
  EXPECT_EQ(one.terms_used, 1u);
  auto big = sine_product_log_sum(1000000);
  PrecReal limit = log(const_pi() / 2L);
  EXPECT_LT(abs(big.value - limit).to_double(), 5e-7);
  EXPECT_LE(abs(big.value - limit), big.tail_bound);
}

TEST(SineProductLogSum, MonotoneAndTailBound) {
  PrecReal prev = sine_product_log_sum(1).value;
  for (std::size_t K = 2; K < 40; ++K) {
    auto cur = sine_product_log_sum(K);
    EXPECT_GT(cur.value, prev);
    prev = cur.value;
  }
  for (std::size_t K : {1u, 3u, 10u, 100u, 1000u}) {
    auto a = sine_product_log_sum(K), b = sine_product_log_sum(2 * K);
    EXPECT_LE(abs(b.value - a.value), a.tail_bound) << K;
  }
}

TEST(StirlingSeriesSum, SmallAndLarge) {
  auto one = stirling_series_sum(1);
  EXPECT_NEAR(one.value.to_double(), std::log(3.0) - 1.0, 1e-16);
  auto big = stirling_series_sum(10000);
  PrecReal limit = (1L - const_log2()) / 2L;
  EXPECT_NEAR(limit.to_double(), 0.15342640972002734, 1e-16);
  EXPECT_LT(abs(big.value - limit).to_double(), 1e-5);
  EXPECT_LE(abs(big.value - limit), big.tail_bound);
}

TEST(StirlingSeriesSum, TermDecayAndTailBound) {
  // t_k 12 k^2 -> 1
  double prev_gap = 1.0;
  for (std::size_t k : {10u, 100u, 1000u}) {
    PrecReal t = stirling_series_sum(k).value - stirling_series_sum(k - 1).value;
    double gap = std::abs(t.to_double() * 12.0 * k * k - 1.0);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-6);
  for (std::size_t K : {1u, 5u, 50u, 500u}) {
    auto a = stirling_series_sum(K), b = stirling_series_sum(2 * K);
    EXPECT_LE(abs(b.value - a.value), a.tail_bound) << K;
  }
}
