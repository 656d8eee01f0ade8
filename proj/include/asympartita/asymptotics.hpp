#ifndef ASYMPARTITA_ASYMPTOTICS_HPP
#define ASYMPARTITA_ASYMPTOTICS_HPP

// Leading-order closed forms and exact-vs-asymptotic ratio reports.
// Estimates that can overflow are returned as natural logarithms.

#include "asympartita/exact_core.hpp"
#include "asympartita/parallel.hpp"
#include "asympartita/special_fn.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace asympartita {

/// Saddle radius for p(n): eps = pi/sqrt(6n), r = e^{-eps},
/// eta = eps^{3/2}/sqrt(2 zeta(3)).
struct PartitionRegime {
  std::uint64_t n;
  PrecReal eps;
  PrecReal r;
  PrecReal eta;

  explicit PartitionRegime(std::uint64_t n_, Precision p = {}) : n(n_) {
    if (n_ < 1) throw DomainError("PartitionRegime: n must be >= 1");
    const Precision work = p.plus(16);
    PrecReal e = const_pi(work) / sqrt(PrecReal(6L * static_cast<long>(n_), work));
    eps = e.rounded(p);
    r = exp(-e).rounded(p);
    eta = (e * sqrt(e) / sqrt(2L * zeta3(work))).rounded(p);
  }
};

/// q-Stirling regime: q = e^{-beta/n}, r = 1 - e^{-beta}, sigma_sq = e^beta - 1 - beta.
/// clt_variance = sigma_sq/beta is the limiting variance of the normalized
/// weighted sum n^{-1/2} sum_k w_k (T_k - 1), which is what enters the Gaussian
/// factor; the two coincide at beta = 1.
struct QRegime {
  PrecReal beta;
  std::uint64_t n;
  PrecReal q;
  PrecReal r;
  PrecReal sigma_sq;
  PrecReal clt_variance;

  QRegime(const PrecReal& beta_, std::uint64_t n_) : beta(beta_), n(n_) {
    if (!(beta_ > 0.0)) throw DomainError("QRegime: beta must be > 0");
    if (n_ < 1) throw DomainError("QRegime: n must be >= 1");
    const Precision p = beta_.precision();
    const Precision work = p.plus(16);
    PrecReal b = beta_.rounded(work);
    q = exp(-b / static_cast<double>(n_)).rounded(p);
    r = (-expm1(-b)).rounded(p);
    PrecReal s = expm1(b) - b;
    sigma_sq = s.rounded(p);
    clt_variance = (s / b).rounded(p);
  }
};

/// Which constant factor to use in the two q-Stirling estimates.
///   derived:    e^{+beta/2} and 1 + sigma^2/beta in the inverse-product estimate,
///               constant factor 1 in the q-factorial estimate. These follow from
///               carrying the Euler-Maclaurin and Gaussian steps through and match
///               exact values to O(1/n).
///   as_printed: e^{-beta/2} and 1 + sigma^2, and e^{beta} in the q-factorial
///               estimate; off by the constant factor e^{-beta} (resp. e^{beta}).
enum class PrefactorConvention { derived, as_printed };

/// ln of p(n) ~ exp(pi sqrt(2n/3)) / (4 n sqrt 3).
inline PrecReal hardy_ramanujan_estimate(std::uint64_t n, Precision p = {}) {
  if (n < 1) throw DomainError("hardy_ramanujan_estimate: n must be >= 1");
  const Precision work = p.plus(16);
  PrecReal nn(static_cast<unsigned long>(n), work);
  PrecReal v = const_pi(work) * sqrt(2L * nn / 3L) - log(4L * nn * sqrt(PrecReal(3L, work)));
  return v.rounded(p);
}

/// ln of r^{-n}/prod(1 - r^k) ~ (24n)^{-1/4} exp(pi sqrt(2n/3)).
inline PrecReal prefactor_estimate(std::uint64_t n, Precision p = {}) {
  if (n < 1) throw DomainError("prefactor_estimate: n must be >= 1");
  const Precision work = p.plus(16);
  PrecReal nn(static_cast<unsigned long>(n), work);
  PrecReal v = const_pi(work) * sqrt(2L * nn / 3L) - log(24L * nn) / 4L;
  return v.rounded(p);
}

/// ln of n^n e^{-n} sqrt(2 pi n).
inline PrecReal stirling_estimate(std::uint64_t n, Precision p = {}) {
  if (n < 1) throw DomainError("stirling_estimate: n must be >= 1");
  const Precision work = p.plus(16);
  PrecReal nn(static_cast<unsigned long>(n), work);
  PrecReal v = nn * log(nn) - nn + log(2L * const_pi(work) * nn) / 2L;
  return v.rounded(p);
}

/// n! n^{s-1} / (s+n-1)_n, which tends to Gamma(s). Written as n^s/(n c_n(s))
/// with c_n(s) the Newton-binomial coefficient.
inline PrecReal gamma_limit_estimate(const PrecReal& s, std::uint64_t n) {
  if (!(s > 0.0)) throw DomainError("gamma_limit_estimate: s must be > 0");
  if (n < 1) throw DomainError("gamma_limit_estimate: n must be >= 1");
  const Precision p = s.precision();
  const Precision work = p.plus(16);
  PrecReal nn(static_cast<unsigned long>(n), work);
  PrecReal c = rising_coeff(s.rounded(work), n);
  return (pow(nn, s.rounded(work)) / (nn * c)).rounded(p);
}

/// (a; e^{-eps})_inf ~ e^{-Li2(a)/eps} sqrt(1 - a).
inline PrecReal q_infinite_product_estimate(const PrecReal& a, const PrecReal& eps) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("q_infinite_product_estimate: requires 0 < a < 1");
  if (!(eps > 0.0)) throw DomainError("q_infinite_product_estimate: requires eps > 0");
  const Precision p = max(a.precision(), eps.precision());
  const Precision work = p.plus(16);
  PrecReal aw = a.rounded(work);
  return (exp(-dilog(aw) / eps.rounded(work)) * sqrt(1.0 - aw)).rounded(p);
}

/// ln of the estimate for 1/(q;q)_n at q = e^{-beta/n}:
///   n(-ln r + Li2(r)/beta) + c_half - (1/2) ln(2 pi (1 + v) n)
/// with (c_half, v) = (+beta/2, sigma^2/beta) derived, (-beta/2, sigma^2) as printed.
inline PrecReal q_inverse_pochhammer_estimate(const QRegime& reg,
                                              PrefactorConvention c = PrefactorConvention::derived) {
  const Precision p = reg.beta.precision();
  const Precision work = p.plus(16);
  PrecReal b = reg.beta.rounded(work), r = reg.r.rounded(work);
  PrecReal nn(static_cast<unsigned long>(reg.n), work);
  PrecReal rate = -log(r) + dilog(r) / b;
  PrecReal half_beta = b / 2L;
  PrecReal v = c == PrefactorConvention::derived ? reg.clt_variance.rounded(work) : reg.sigma_sq.rounded(work);
  PrecReal out = nn * rate + (c == PrefactorConvention::derived ? half_beta : -half_beta) -
                 log(2L * const_pi(work) * (1L + v) * nn) / 2L;
  return out.rounded(p);
}

/// ln of the estimate for [n]_q! at q = e^{-beta/n}:
///   n ln n + n(-ln beta + ln r - Li2(r)/beta) + c0 + (1/2) ln(2 pi (1 + v) n)
/// with (c0, v) = (0, sigma^2/beta) derived, (beta, sigma^2) as printed.
inline PrecReal q_stirling_estimate(const QRegime& reg, PrefactorConvention c = PrefactorConvention::derived) {
  const Precision p = reg.beta.precision();
  const Precision work = p.plus(16);
  PrecReal b = reg.beta.rounded(work), r = reg.r.rounded(work);
  PrecReal nn(static_cast<unsigned long>(reg.n), work);
  PrecReal rate = -log(b) + log(r) - dilog(r) / b;
  PrecReal v = c == PrefactorConvention::derived ? reg.clt_variance.rounded(work) : reg.sigma_sq.rounded(work);
  PrecReal out = nn * log(nn) + nn * rate + log(2L * const_pi(work) * (1L + v) * nn) / 2L;
  if (c == PrefactorConvention::as_printed) out += b;
  return out.rounded(p);
}

struct RatioRow {
  std::uint64_t n;
  PrecReal exact_log;
  PrecReal approx_log;
  PrecReal ratio;  // exp(approx_log - exact_log)
};

enum class RatioKindTag { partition, stirling, gamma, q_pochhammer, q_factorial };

/// Report kind plus its parameter (s for GAMMA, beta for the q kinds).
struct RatioKind {
  RatioKindTag tag;
  PrecReal param;
  PrefactorConvention convention = PrefactorConvention::derived;

  static RatioKind partition(Precision p = {}) { return {RatioKindTag::partition, PrecReal(p)}; }
  static RatioKind stirling(Precision p = {}) { return {RatioKindTag::stirling, PrecReal(p)}; }
  static RatioKind gamma(PrecReal s) { return {RatioKindTag::gamma, std::move(s)}; }
  static RatioKind q_pochhammer(PrecReal beta, PrefactorConvention c = PrefactorConvention::derived) {
    return {RatioKindTag::q_pochhammer, std::move(beta), c};
  }
  static RatioKind q_factorial(PrecReal beta, PrefactorConvention c = PrefactorConvention::derived) {
    return {RatioKindTag::q_factorial, std::move(beta), c};
  }

  std::string name() const {
    switch (tag) {
      case RatioKindTag::partition: return "partition";
      case RatioKindTag::stirling: return "stirling";
      case RatioKindTag::gamma: return "gamma";
      case RatioKindTag::q_pochhammer: return "q_pochhammer";
      case RatioKindTag::q_factorial: return "q_factorial";
    }
    return "?";
  }
};

inline RatioRow make_ratio_row(std::uint64_t n, PrecReal exact_log, PrecReal approx_log) {
  PrecReal ratio = exp(approx_log - exact_log);
  return {n, std::move(exact_log), std::move(approx_log), std::move(ratio)};
}

/// One row per n: exact route from exact_core, closed form from this module.
/// Rows are computed in parallel and returned in input order.
inline std::vector<RatioRow> ratio_report(const RatioKind& kind, const std::vector<std::uint64_t>& ns,
                                          unsigned threads = 1) {
  if (ns.empty()) throw DomainError("ratio_report: ns must be nonempty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw DomainError("ratio_report: every n must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("ratio_report: ns must be strictly increasing");
  }
  const Precision p = kind.param.precision();

  std::vector<BigNat> partitions;
  if (kind.tag == RatioKindTag::partition) partitions = partition_count_table(ns.back());

  std::vector<RatioRow> rows(ns.size(), RatioRow{0, PrecReal(p), PrecReal(p), PrecReal(p)});
  parallel_for(
      ns.size(),
      [&](std::size_t i) {
        const std::uint64_t n = ns[i];
        switch (kind.tag) {
          case RatioKindTag::partition:
            rows[i] = make_ratio_row(n, partitions[n].log(p), hardy_ramanujan_estimate(n, p));
            break;
          case RatioKindTag::stirling:
            rows[i] = make_ratio_row(n, factorial(n).log(p), stirling_estimate(n, p));
            break;
          case RatioKindTag::gamma: {
            PrecReal lg(p);
            mpfr_lngamma(lg.raw(), kind.param.get(), MPFR_RNDN);
            rows[i] = make_ratio_row(n, lg, log(gamma_limit_estimate(kind.param, n)));
            break;
          }
          case RatioKindTag::q_pochhammer: {
            QRegime reg(kind.param, n);
            PrecReal exact = -log(q_pochhammer(reg.q, reg.q, n));
            rows[i] = make_ratio_row(n, exact, q_inverse_pochhammer_estimate(reg, kind.convention));
            break;
          }
          case RatioKindTag::q_factorial: {
            QRegime reg(kind.param, n);
            rows[i] = make_ratio_row(n, log(q_factorial(n, reg.q)), q_stirling_estimate(reg, kind.convention));
            break;
          }
        }
      },
      threads);
  return rows;
}

}  // namespace asympartita

#endif  // ASYMPARTITA_ASYMPTOTICS_HPP
