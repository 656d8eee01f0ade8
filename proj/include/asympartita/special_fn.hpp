#ifndef ASYMPARTITA_SPECIAL_FN_HPP
#define ASYMPARTITA_SPECIAL_FN_HPP

// Dilogarithm, zeta(3), Bose-type integrals and the two slowly convergent
// series behind the elementary Stirling derivation.

#include "asympartita/prec_real.hpp"
#include "asympartita/quadrature.hpp"

#include <gmpxx.h>

#include <cstddef>

namespace asympartita {

namespace detail {

// sum_{k>=1} x^k / k^2 for |x| <= 0.6 or so; stops once terms drop below 2^-bits.
inline PrecReal dilog_series(const PrecReal& x, Precision p) {
  if (!(abs(x) < 1.0)) throw DomainError("dilog series requires |x| < 1");
  const Precision work = p.plus(16);
  PrecReal xw = x.rounded(work);
  PrecReal power = xw, sum(work), term(work);
  const PrecReal eps = pow2(-static_cast<long>(work.bits()), work);
  for (unsigned long k = 1;; ++k) {
    mpfr_div_ui(term.raw(), power.get(), k, MPFR_RNDN);
    mpfr_div_ui(term.raw(), term.get(), k, MPFR_RNDN);
    sum += term;
    if (abs(term) < eps) break;
    power *= xw;
  }
  return sum.rounded(p);
}

// Euler reflection, valid on (0, 1]: Li2(x) = pi^2/6 - ln x ln(1-x) - Li2(1-x).
inline PrecReal dilog_reflection(const PrecReal& x, Precision p) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("dilog reflection requires 0 < x <= 1");
  const Precision work = p.plus(16);
  PrecReal xw = x.rounded(work);
  PrecReal pi = const_pi(work);
  PrecReal zeta2 = square(pi) / 6L;
  if (xw == 1.0) return zeta2.rounded(p);  // ln x ln(1-x) -> 0
  PrecReal y = 1.0 - xw;
  return (zeta2 - log(xw) * log(y) - dilog_series(y, work)).rounded(p);
}

// Landen's identity, valid on [-1, 0): Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2.
inline PrecReal dilog_landen(const PrecReal& x, Precision p) {
  if (!(x >= -1.0 && x < 0.0)) throw DomainError("dilog Landen route requires -1 <= x < 0");
  const Precision work = p.plus(16);
  PrecReal xw = x.rounded(work);
  PrecReal y = xw / (xw - 1L);  // in (0, 1/2]
  return (-dilog_series(y, work) - square(log1p(-xw)) / 2L).rounded(p);
}

}  // namespace detail

/// Li2(x) for x in [-1, 1].
inline PrecReal dilog(const PrecReal& x) {
  if (!(abs(x) <= 1.0)) throw DomainError("dilog requires -1 <= x <= 1");
  const Precision p = x.precision();
  if (x.is_zero()) return PrecReal(p);
  if (x >= -0.5 && x <= 0.5) return detail::dilog_series(x, p);
  if (x > 0.5) return detail::dilog_reflection(x, p);
  return detail::dilog_landen(x, p);
}

/// zeta(3) by Apery's series (5/2) sum (-1)^{k+1} / (k^3 C(2k,k)); each term
/// shrinks by about 4x, and the alternating tail is below the first omitted term.
inline PrecReal zeta3(Precision p = {}) {
  const Precision work = p.plus(16);
  PrecReal sum(work), term(work);
  mpz_class central = 2;  // C(2k, k) at k = 1
  const PrecReal eps = pow2(-static_cast<long>(work.bits()), work);
  for (unsigned long k = 1;; ++k) {
    if (k > 1) {
      central *= 2 * (2 * k - 1);
      central /= k;
    }
    mpz_class den = central * k * k * k;
    mpfr_set_z(term.raw(), den.get_mpz_t(), MPFR_RNDN);
    mpfr_ui_div(term.raw(), 1, term.get(), MPFR_RNDN);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
    if (term < eps) break;
  }
  return (sum * 5L / 2L).rounded(p);
}

/// A constant computed two independent ways.
struct DualRoute {
  PrecReal closed_form;
  IntegralResult quadrature;

  PrecReal difference() const { return abs(closed_form - quadrature.value); }
  bool agree() const { return quadrature.converged && difference() <= quadrature.error_estimate + closed_form.ulp() * 16L; }
};

inline QuadratureConfig default_constant_quadrature(Precision p) {
  // Tolerances sit well above 2^-bits so tanh-sinh stops once it is resolved.
  const double tol = std::ldexp(1.0, -static_cast<int>(p.bits()) / 2);
  return QuadratureConfig(12, tol, tol, p);
}

/// ∫_0^∞ x^p/(e^x - 1) dx for p in {1, 2}: pi^2/6 and 2 zeta(3).
inline DualRoute bose_integral(int power, Precision p = {}) {
  if (power != 1 && power != 2) throw DomainError("bose_integral: p must be 1 or 2");
  const Precision work = p.plus(16);
  PrecReal closed = power == 1 ? square(const_pi(work)) / 6L : 2L * zeta3(work);
  auto g = [power](const PrecReal& x) {
    return (power == 1 ? x : square(x)) / expm1(x);
  };
  return {closed.rounded(p), integrate_half_line(g, default_constant_quadrature(p))};
}

/// ∫_0^∞ (x/(e^x - 1))^2 dx = pi^2/3 - 2 zeta(3).
inline DualRoute bose_square_integral(Precision p = {}) {
  const Precision work = p.plus(16);
  PrecReal closed = square(const_pi(work)) / 3L - 2L * zeta3(work);
  auto g = [](const PrecReal& x) { return square(x / expm1(x)); };
  return {closed.rounded(p), integrate_half_line(g, default_constant_quadrature(p))};
}

/// ∫_0^∞ (r e^{-x}/(1 - r e^{-x}))^2 dx = r/(1-r) + ln(1-r); with r = 1 - e^{-beta}
/// this is e^beta - 1 - beta.
inline DualRoute tilted_bose_square_integral(const PrecReal& r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("tilted_bose_square_integral requires 0 < r < 1");
  const Precision p = r.precision();
  const Precision work = p.plus(16);
  PrecReal rw = r.rounded(work);
  PrecReal closed = rw / (1.0 - rw) + log1p(-rw);
  auto g = [&rw](const PrecReal& x) {
    PrecReal y = rw * exp(-x);
    return square(y / (1.0 - y));
  };
  return {closed.rounded(p), integrate_half_line(g, default_constant_quadrature(p))};
}

/// ∫_0^∞ ln(1 - e^{-x}) dx, which equals -Li2(1) = -pi^2/6.
inline DualRoute log_one_minus_exp_integral(Precision p = {}) {
  const Precision work = p.plus(16);
  PrecReal closed = -detail::dilog_reflection(PrecReal(1L, work), work);
  auto g = [](const PrecReal& x) { return log(-expm1(-x)); };
  return {closed.rounded(p), integrate_half_line(g, default_constant_quadrature(p))};
}

struct SeriesPartialSum {
  std::size_t terms_used = 0;
  PrecReal value;
  PrecReal tail_bound;
};

/// -sum_{k<=K} ln(1 - 1/(4k^2)), converging to ln(pi/2).
/// Each term is below 1/(3k^2), so the tail is below 1/(2K).
inline SeriesPartialSum sine_product_log_sum(std::size_t K, Precision p = {}) {
  if (K < 1) throw DomainError("sine_product_log_sum: K must be >= 1");
  const Precision work = p.plus(bit_width_of(K) + 8);
  PrecReal sum(work), x(work);
  for (std::size_t k = 1; k <= K; ++k) {
    // x = -1/(4k^2)
    mpfr_set_ui(x.raw(), 4, MPFR_RNDN);
    mpfr_mul_ui(x.raw(), x.get(), k, MPFR_RNDN);
    mpfr_mul_ui(x.raw(), x.get(), k, MPFR_RNDN);
    mpfr_si_div(x.raw(), -1, x.get(), MPFR_RNDN);
    mpfr_log1p(x.raw(), x.get(), MPFR_RNDN);
    sum -= x;
  }
  PrecReal tail(1L, p);
  tail /= static_cast<double>(2 * K);
  return {K, sum.rounded(p), tail};
}

/// sum_{k<=K} [k (ln(1 + 1/2k) - ln(1 - 1/2k)) - 1], converging to (1 - ln 2)/2.
/// Term k is 2k atanh(1/2k) - 1 = 1/(12k^2) + O(k^-4); the tail is below 1/(6K).
inline SeriesPartialSum stirling_series_sum(std::size_t K, Precision p = {}) {
  if (K < 1) throw DomainError("stirling_series_sum: K must be >= 1");
  const Precision work = p.plus(bit_width_of(K) + 8);
  PrecReal sum(work), x(work);
  for (std::size_t k = 1; k <= K; ++k) {
    mpfr_set_ui(x.raw(), 1, MPFR_RNDN);
    mpfr_div_ui(x.raw(), x.get(), 2 * k, MPFR_RNDN);
    mpfr_atanh(x.raw(), x.get(), MPFR_RNDN);
    mpfr_mul_ui(x.raw(), x.get(), 2 * k, MPFR_RNDN);
    mpfr_sub_ui(x.raw(), x.get(), 1, MPFR_RNDN);
    sum += x;
  }
  PrecReal tail(1L, p);
  tail /= static_cast<double>(6 * K);
  return {K, sum.rounded(p), tail};
}

}  // namespace asympartita

#endif  // ASYMPARTITA_SPECIAL_FN_HPP
