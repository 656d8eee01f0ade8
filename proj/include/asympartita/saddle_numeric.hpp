#ifndef ASYMPARTITA_SADDLE_NUMERIC_HPP
#define ASYMPARTITA_SADDLE_NUMERIC_HPP

// Direct numerical evaluation of the Cauchy integrals and Euler-Maclaurin
// sums that connect the exact values to the closed forms.

#include "asympartita/asymptotics.hpp"
#include "asympartita/bignat.hpp"
#include "asympartita/quadrature.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace asympartita {

/// Smallest K with r^K/(1 - r) < abs_tol, and never below n: factors with
/// k > n do not touch the coefficient of z^n.
inline std::size_t partition_cauchy_truncation(const PartitionRegime& reg, const PrecReal& abs_tol) {
  const double eps = reg.eps.to_double();
  const double need = (std::log(1.0 / abs_tol.to_double()) - std::log1p(-reg.r.to_double())) / eps;
  return std::max<std::size_t>(reg.n, static_cast<std::size_t>(std::ceil(need)) + 1);
}

/// p(n) = r^{-n} (1/2pi) ∫ e^{-in theta} prod_{k<=K} (1 - r^k e^{ik theta})^{-1} d theta
/// at the saddle radius r = e^{-pi/sqrt(6n)}, by the periodic trapezoid rule.
/// The r^{-n} factor is applied inside the integrand so that error_estimate is
/// in units of p(n).
inline IntegralResult partition_cauchy_integral(std::uint64_t n, std::size_t K_trunc, const QuadratureConfig& cfg) {
  const Precision p = cfg.precision();
  const Precision work = p.plus(bit_width_of(K_trunc) + 16);
  PartitionRegime reg(n, work);
  {
    PrecReal tail = pow(reg.r, static_cast<long>(K_trunc)) / (1.0 - reg.r);
    if (!(tail < cfg.abs_tolerance))
      throw DomainError("partition_cauchy_integral: K_trunc too small, r^K/(1-r) >= abs_tolerance");
  }
  const PrecReal r_pow_minus_n = exp(reg.eps * static_cast<double>(n));
  const long nn = static_cast<long>(n);

  PeriodicIntegrand f = [&, K_trunc](const PrecReal& theta) {
    PrecComplex z = polar(reg.r, theta);
    PrecComplex w = z;  // z^k
    PrecComplex prod(PrecReal(1L, work), PrecReal(work));
    PrecComplex factor(work);
    PrecReal scratch(work);
    for (std::size_t k = 1; k <= K_trunc; ++k) {
      factor.re = 1.0 - w.re;
      factor.im = -w.im;
      mul_assign(prod, factor, scratch);
      if (k < K_trunc) mul_assign(w, z, scratch);
    }
    PrecComplex phase = polar(r_pow_minus_n, -theta * static_cast<double>(nn));
    return phase / prod;
  };
  // Node count must exceed n before aliasing of p(n + N) r^N can settle.
  std::size_t n0 = 64;
  while (n0 < n) n0 *= 2;
  IntegralResult res = periodic_trapezoid(f, cfg, n0);
  return res;
}

/// Nearest integer to a contour-integral value, certified only when the
/// total error is below one half.
inline BigNat certify_integer(const IntegralResult& res) {
  if (!res.converged || !(res.error_estimate < 0.5))
    throw QuadratureError("cannot certify integer: error estimate >= 0.5", res);
  PrecReal rounded(res.value.precision());
  mpfr_rint(rounded.raw(), res.value.get(), MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
  return BigNat::from_mpz(std::move(z));
}

/// (1/2pi) ∫ e^{-in(theta - tau sin theta)} e^{-2n tau sin^2(theta/2)} d theta.
inline IntegralResult binomial_theta_integral(std::uint64_t n, const PrecReal& tau, const QuadratureConfig& cfg) {
  if (n < 1) throw DomainError("binomial_theta_integral: n must be >= 1");
  if (!(tau > 0.0)) throw DomainError("binomial_theta_integral: tau must be > 0");
  const Precision work = cfg.precision().plus(bit_width_of(n) + 16);
  const PrecReal t = tau.rounded(work);
  const PrecReal nn(static_cast<unsigned long>(n), work);
  PeriodicIntegrand f = [&](const PrecReal& theta) {
    auto [s, c] = sin_cos(theta.rounded(work));
    PrecReal half_s = sin(theta.rounded(work) / 2L);
    PrecReal modulus = exp(-2L * nn * t * square(half_s));
    return polar(modulus, -nn * (theta - t * s));
  };
  // The integrand has width about 1/sqrt(n tau); start with enough nodes to see it.
  std::size_t n0 = 64;
  while (n0 * n0 < 64 * n * std::max(1.0, tau.to_double())) n0 *= 2;
  return periodic_trapezoid(f, cfg, n0);
}

/// (1/2pi) ∫ e^{-in theta} e^{t r e^{i theta}} d theta, which equals (tr)^n/n! exactly.
inline IntegralResult binomial_inner_integral_exact_check(std::uint64_t n, const PrecReal& t, const PrecReal& r,
                                                          const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("binomial_inner_integral: t must be > 0");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("binomial_inner_integral: r must be in (0, 1)");
  const Precision work = cfg.precision().plus(16);
  const PrecReal tr = (t * r).rounded(work);
  PeriodicIntegrand f = [&, n](const PrecReal& theta) {
    auto [s, c] = sin_cos(theta.rounded(work));
    return polar(exp(tr * c), tr * s - theta * static_cast<double>(n));
  };
  std::size_t n0 = 64;
  while (n0 < 2 * n) n0 *= 2;
  return periodic_trapezoid(f, cfg, n0);
}

/// ∫_{n^-delta}^∞ e^{-s(tau-1)} tau^{s-1} e^{n(ln tau + 1 - tau)} / sqrt(2 pi n) d tau,
/// cut off above where the integrand falls below abs_tolerance.
inline IntegralResult binomial_tau_integral(std::uint64_t n, const PrecReal& s, const PrecReal& delta,
                                            const QuadratureConfig& cfg) {
  if (n < 2) throw DomainError("binomial_tau_integral: n must be >= 2");
  if (!(s > 0.0)) throw DomainError("binomial_tau_integral: s must be > 0");
  if (!(delta > 0.0 && delta < 1.0 / 3.0)) throw DomainError("binomial_tau_integral: delta must be in (0, 1/3)");
  const Precision work = cfg.precision().plus(16);
  const PrecReal sw = s.rounded(work);
  const PrecReal nn(static_cast<unsigned long>(n), work);
  const PrecReal log_norm = log(2L * const_pi(work) * nn) / 2L;

  auto log_integrand = [&](const PrecReal& tau) {
    PrecReal d = tau - 1L;
    return -sw * d + (sw - 1L) * log(tau) + nn * (log1p(d) - d) - log_norm;
  };
  auto integrand = [&](const PrecReal& tau) { return exp(log_integrand(tau)); };

  // Upper cutoff by doubling then bisection in double precision on the log scale.
  const double ln_tol = std::log(cfg.abs_tolerance.to_double()) - 10.0;
  auto ld = [&](double x) { return log_integrand(PrecReal(x, work)).to_double(); };
  double hi = 1.0 + 1.0 / std::sqrt(static_cast<double>(n));
  while (ld(hi) > ln_tol) hi = 1.0 + 2.0 * (hi - 1.0);
  double lo_b = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo_b + hi);
    (ld(mid) > ln_tol ? lo_b : hi) = mid;
  }

  const PrecReal lower = pow(nn, -delta.rounded(work));
  const double width = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<PrecReal> breaks{lower};
  for (double off : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
    double x = 1.0 + off * width;
    if (x > breaks.back().to_double() && x < hi) breaks.emplace_back(x, work);
  }
  breaks.emplace_back(hi, work);
  IntegralResult res = adaptive_gauss_legendre(integrand, breaks, cfg);
  return res;
}

/// -sum_{k>=1} ln(1 - e^{-eps k}), summed until the tail
/// e^{-eps K}/(eps (1 - e^{-eps K})) drops below 2^{-bits/2}.
inline PrecReal em_log_product_sum(const PrecReal& eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("em_log_product_sum: eps must be in (0, 1)");
  const Precision p = eps.precision();
  const double e = eps.to_double();
  const double target = -0.5 * static_cast<double>(p.bits()) * std::log(2.0);
  std::size_t K = 1;
  while (-e * K - std::log(e) - std::log1p(-std::exp(-e * K)) > target) K *= 2;
  const Precision work = p.plus(bit_width_of(K) + 16);
  const PrecReal step = exp(-eps.rounded(work));
  PrecReal x = step, sum(work), t(work);
  for (std::size_t k = 1; k <= K; ++k) {
    mpfr_neg(t.raw(), x.get(), MPFR_RNDN);
    mpfr_log1p(t.raw(), t.get(), MPFR_RNDN);
    sum -= t;
    x *= step;
  }
  return sum.rounded(p);
}

/// Geometric tail bound used by the k-sums below: terms are below C x^k.
inline std::size_t geometric_cutoff(double log_ratio_per_k, double log_tol) {
  return static_cast<std::size_t>(std::ceil(log_tol / log_ratio_per_k)) + 1;
}

/// sum_{k>=0} r e^{-k eps}/(1 - r e^{-k eps}).
inline PrecReal em_mean_sum(const PrecReal& r, const PrecReal& eps) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("em_mean_sum: r must be in (0, 1)");
  if (!(eps > 0.0)) throw DomainError("em_mean_sum: eps must be > 0");
  const Precision p = max(r.precision(), eps.precision());
  const double e = eps.to_double(), rd = r.to_double();
  // term k <= r e^{-k eps}/(1-r); tail after K is below that over (1 - e^{-eps})
  const double log_tol = -0.5 * static_cast<double>(p.bits()) * std::log(2.0) + std::log1p(-rd) +
                         std::log(-std::expm1(-e)) - std::log(rd);
  const std::size_t K = geometric_cutoff(-e, log_tol);
  const Precision work = p.plus(bit_width_of(K) + 16);
  const PrecReal step = exp(-eps.rounded(work));
  PrecReal y = r.rounded(work), sum(work);
  for (std::size_t k = 0; k <= K; ++k) {
    sum += y / (1.0 - y);
    y *= step;
  }
  return sum.rounded(p);
}

/// sum_{k>=1} k^p r^k/(1 - r^k) at the saddle radius of reg.
inline PrecReal weighted_bose_sum(int power, const PartitionRegime& reg) {
  if (power != 1 && power != 2) throw DomainError("weighted_bose_sum: p must be 1 or 2");
  const Precision p = reg.eps.precision();
  const double e = reg.eps.to_double();
  // tail is below sum_{k>K} k^p e^{-eps k}/(1 - e^{-eps}): stop once k^p e^{-eps k}
  // is far below 2^{-bits} relative to the eps^{-1-p} sized total.
  const double log_tol = -0.5 * static_cast<double>(p.bits()) * std::log(2.0);
  std::size_t K = 1;
  while (power * std::log(static_cast<double>(K)) - e * K + (1 + power) * std::log(1.0 / e) > log_tol) K *= 2;
  const Precision work = p.plus(bit_width_of(K) + 16);
  const PrecReal r = reg.r.rounded(work);
  PrecReal y = r, sum(work), term(work);
  for (std::size_t k = 1; k <= K; ++k) {
    term = y / (1.0 - y);
    term *= static_cast<double>(k);
    if (power == 2) term *= static_cast<double>(k);
    sum += term;
    y *= r;
  }
  return sum.rounded(p);
}

/// 2 eps^{-1} ∫_0^∞ sin^2(t x/2)/(e^x - 1) dx, the mean-field exponent of the
/// minor-arc suppression at theta = t eps. The range is cut at X where the
/// remaining tail -ln(1 - e^{-X}) is below abs_tolerance eps/2, and split into
/// pieces no longer than one period of the oscillation.
inline IntegralResult minor_arc_bound(const PartitionRegime& reg, const PrecReal& t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("minor_arc_bound: t must be > 0");
  const Precision work = cfg.precision().plus(16);
  const PrecReal tw = t.rounded(work);
  const double td = t.to_double();
  const PrecReal eps = reg.eps.rounded(work);
  const double X = -std::log(cfg.abs_tolerance.to_double() * reg.eps.to_double() / 2.0) + 1.0;
  const double piece = std::min(1.0, 2.0 * M_PI / td);
  const std::size_t count = static_cast<std::size_t>(std::ceil(X / piece));
  std::vector<PrecReal> breaks;
  breaks.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) breaks.emplace_back(piece * static_cast<double>(i), work);

  auto f = [&](const PrecReal& x) {
    if (x.is_zero()) return PrecReal(work);
    return square(sin(tw * x / 2L)) / expm1(x);
  };
  // Tolerances apply to the scaled result 2 I / eps.
  QuadratureConfig inner(cfg.max_subdivisions + count, cfg.abs_tolerance.to_double() * reg.eps.to_double() / 2.0,
                         cfg.rel_tolerance.to_double(), cfg.precision());
  IntegralResult res = adaptive_gauss_legendre(f, breaks, inner);
  PrecReal scale = 2L / eps;
  PrecReal tail = -log1p(-exp(-PrecReal(breaks.back())));
  res.value = (res.value * scale).rounded(cfg.precision());
  res.error_estimate = ((res.error_estimate + tail) * scale).rounded(cfg.precision());
  res.converged = res.error_estimate <= cfg.target(res.value);
  return res;
}

/// The sum the minor-arc integral approximates, with T_k replaced by its mean:
/// 2 sum_{k>=1} r^k/(1 - r^k) sin^2(t eps k/2).
inline PrecReal minor_arc_mean_field_sum(const PartitionRegime& reg, const PrecReal& t) {
  const Precision p = reg.eps.precision();
  const double e = reg.eps.to_double();
  const double log_tol = -0.5 * static_cast<double>(p.bits()) * std::log(2.0) + std::log(e);
  const std::size_t K = geometric_cutoff(-e, log_tol);
  const Precision work = p.plus(bit_width_of(K) + 16);
  const PrecReal r = reg.r.rounded(work), theta = (t * reg.eps).rounded(work);
  PrecReal y = r, sum(work);
  for (std::size_t k = 1; k <= K; ++k) {
    sum += y / (1.0 - y) * square(sin(theta * static_cast<double>(k) / 2L));
    y *= r;
  }
  return (2L * sum).rounded(p);
}

}  // namespace asympartita

#endif  // ASYMPARTITA_SADDLE_NUMERIC_HPP
