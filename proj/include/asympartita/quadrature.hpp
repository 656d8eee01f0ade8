#ifndef ASYMPARTITA_QUADRATURE_HPP
#define ASYMPARTITA_QUADRATURE_HPP

// Quadrature kernels at arbitrary precision:
//   * tanh-sinh on a finite interval (endpoint singularities, smooth interiors),
//   * a half-line wrapper using the substitution u = e^{-x},
//   * globally adaptive Gauss-Legendre bisection (interior peaks),
//   * the periodic trapezoid rule on [-pi, pi) with node doubling.
//
// Every routine returns an error estimate and the number of integrand calls.
// Sums are reduced pairwise in index order, so results are bit-stable
// regardless of how many threads evaluated the nodes.

#include "asympartita/parallel.hpp"
#include "asympartita/prec_real.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asympartita {

struct QuadratureConfig {
  /// Cap on refinement steps: tanh-sinh levels, trapezoid doublings, or
  /// Gauss-Legendre interval splits.
  std::size_t max_subdivisions;
  PrecReal abs_tolerance;
  PrecReal rel_tolerance;
  unsigned threads = 1;

  QuadratureConfig(std::size_t max_sub, double abs_tol, double rel_tol, Precision p = {})
      : max_subdivisions(max_sub), abs_tolerance(abs_tol, p), rel_tolerance(rel_tol, p) {
    if (max_sub == 0) throw DomainError("max_subdivisions must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  }

  Precision precision() const { return abs_tolerance.precision(); }

  /// Converged once the error estimate is below max(abs_tol, rel_tol |value|).
  PrecReal target(const PrecReal& value) const { return max(abs_tolerance, rel_tolerance * abs(value)); }
};

struct IntegralResult {
  PrecReal value;
  PrecReal imag;  // zero for real integrands
  PrecReal error_estimate;
  std::size_t evaluations = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, IntegralResult partial)
      : std::runtime_error(what + " (evaluations=" + std::to_string(partial.evaluations) + ")"),
        partial_(std::move(partial)) {}
  const IntegralResult& partial() const { return partial_; }

 private:
  IntegralResult partial_;
};

namespace detail {

inline PrecReal pairwise_sum(std::span<const PrecReal> xs, Precision p) {
  if (xs.empty()) return PrecReal(p);
  if (xs.size() == 1) return xs[0].rounded(max(p, xs[0].precision()));
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, mid), p) + pairwise_sum(xs.subspan(mid), p);
}

inline PrecComplex pairwise_sum(std::span<const PrecComplex> xs, Precision p) {
  if (xs.empty()) return PrecComplex(p);
  if (xs.size() == 1) return xs[0];
  const std::size_t mid = xs.size() / 2;
  PrecComplex s = pairwise_sum(xs.subspan(0, mid), p);
  s += pairwise_sum(xs.subspan(mid), p);
  return s;
}

inline void require_converged(IntegralResult& r, const char* who) {
  if (!r.converged) throw QuadratureError(std::string(who) + ": quadrature did not converge", r);
}

}  // namespace detail

/// Integrand for tanh-sinh: f(x, x - a, b - x). The two distances are exact to
/// working precision even where x itself rounds onto an endpoint.
using EndpointIntegrand =
    std::function<PrecReal(const PrecReal& x, const PrecReal& from_a, const PrecReal& to_b)>;

/// Tanh-sinh quadrature of f over [a, b]. Levels are refined until two
/// successive estimates agree within the configured tolerance.
inline IntegralResult tanh_sinh(const EndpointIntegrand& f, const PrecReal& a, const PrecReal& b,
                                const QuadratureConfig& cfg) {
  const Precision p = cfg.precision();
  const Precision work = p.plus(24);
  const PrecReal aw = a.rounded(work), bw = b.rounded(work);
  const PrecReal len = bw - aw, half = len / 2L, mid = (aw + bw) / 2L;
  const PrecReal pi = const_pi(work), half_pi = pi / 2L;

  // Beyond t_max the weights fall below 2^-(bits+40).
  const double tmax = std::asinh((static_cast<double>(p.bits()) + 40.0) * std::log(2.0) / M_PI) + 0.5;

  IntegralResult res{PrecReal(p), PrecReal(p), PrecReal(p), 0, false};
  PrecReal total(work);        // h * sum of weighted values at the current level
  PrecReal abs_total(work);    // h * sum of |weighted values|
  PrecReal prev(work);
  bool have_prev = false;

  for (std::size_t level = 0; level <= cfg.max_subdivisions; ++level) {
    const PrecReal h = pow2(-static_cast<long>(level), work);
    // Level 0 uses every multiple of h = 1; later levels only the odd multiples.
    const long count = static_cast<long>(std::ceil(tmax * std::ldexp(1.0, static_cast<int>(level))));
    std::vector<long> js;
    for (long j = (level == 0 ? 0 : 1); j <= count; j += (level == 0 ? 1 : 2)) js.push_back(j);

    std::vector<PrecReal> vals(js.size(), PrecReal(work)), mags(js.size(), PrecReal(work));
    parallel_for(
        js.size(),
        [&](std::size_t i) {
          PrecReal t = h * js[i];
          PrecReal sh(work), ch(work);
          mpfr_sinh_cosh(sh.raw(), ch.raw(), t.get(), MPFR_RNDN);
          const PrecReal s = half_pi * sh;
          const PrecReal E = exp(2L * s);     // e^{2s}
          const PrecReal Einv = 1.0 / E;
          const PrecReal w = pi * ch * 2L / (E + 2L + Einv) * half;
          // +t node (towards b) and -t node (towards a)
          const PrecReal to_b = len / (1.0 + E);
          const PrecReal from_a = len - to_b;
          PrecReal x_plus = bw - to_b;
          PrecReal fp = f(x_plus, from_a, to_b) * w;
          if (js[i] == 0) {
            mags[i] = abs(fp);
            vals[i] = std::move(fp);
            return;
          }
          PrecReal x_minus = aw + to_b;
          PrecReal fm = f(x_minus, to_b, from_a) * w;
          mags[i] = abs(fp) + abs(fm);
          vals[i] = fp + fm;
        },
        cfg.threads);
    res.evaluations += js.empty() ? 0 : 2 * js.size() - (level == 0 ? 1 : 0);

    PrecReal level_sum = detail::pairwise_sum(vals, work) * h;
    PrecReal level_abs = detail::pairwise_sum(mags, work) * h;
    if (level == 0) {
      total = level_sum;
      abs_total = level_abs;
    } else {
      total = total / 2L + level_sum;
      abs_total = abs_total / 2L + level_abs;
    }

    if (have_prev && level >= 3) {
      PrecReal diff = abs(total - prev);
      PrecReal rounding = abs_total * pow2(-static_cast<long>(p.bits()) + 8, work);
      PrecReal err = diff + rounding;
      if (err <= cfg.target(total) || level == cfg.max_subdivisions) {
        res.value = total.rounded(p);
        res.error_estimate = err.rounded(p);
        res.converged = err <= cfg.target(total);
        return res;
      }
    }
    prev = total;
    have_prev = true;
  }
  res.value = total.rounded(p);
  res.error_estimate = PrecReal(1e300, p);
  return res;
}

/// ∫_0^∞ g(x) dx through u = e^{-x}: ∫_0^1 g(-ln u) / u du by tanh-sinh.
inline IntegralResult integrate_half_line(const std::function<PrecReal(const PrecReal& x)>& g,
                                          const QuadratureConfig& cfg) {
  const Precision work = cfg.precision().plus(24);
  EndpointIntegrand f = [&](const PrecReal&, const PrecReal& u, const PrecReal& one_minus_u) {
    if (u.is_zero()) return PrecReal(work);
    PrecReal x = (u < 0.5) ? -log(u) : -log1p(-one_minus_u);
    return g(x) / u;
  };
  return tanh_sinh(f, PrecReal(0L, work), PrecReal(1L, work), cfg);
}

/// Gauss-Legendre rule of order m on [-1, 1] at precision p.
struct GaussLegendreRule {
  std::vector<PrecReal> nodes;
  std::vector<PrecReal> weights;

  static GaussLegendreRule make(unsigned m, Precision p) {
    GaussLegendreRule rule;
    const Precision work = p.plus(16);
    const PrecReal eps = pow2(-static_cast<long>(p.bits()) - 8, work);
    for (unsigned i = 1; i <= m; ++i) {
      PrecReal x(std::cos(M_PI * (i - 0.25) / (m + 0.5)), work);
      PrecReal dp(work);
      for (int iter = 0; iter < 100; ++iter) {
        PrecReal p0(1L, work), p1 = x;
        for (unsigned k = 2; k <= m; ++k) {
          PrecReal p2 = ((2L * k - 1) * x * p1 - static_cast<long>(k - 1) * p0) / static_cast<long>(k);
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = static_cast<long>(m) * (x * p1 - p0) / (x * x - 1L);
        PrecReal dx = p1 / dp;
        x -= dx;
        if (abs(dx) < eps) break;
      }
      rule.nodes.push_back(x.rounded(p));
      rule.weights.push_back((2L / ((1L - x * x) * dp * dp)).rounded(p));
    }
    return rule;
  }

  PrecReal apply(const std::function<PrecReal(const PrecReal&)>& f, const PrecReal& a, const PrecReal& b,
                 Precision work) const {
    const PrecReal half = (b - a) / 2L, mid = (a + b) / 2L;
    std::vector<PrecReal> terms;
    terms.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms.push_back(weights[i] * f(mid + half * nodes[i]));
    return detail::pairwise_sum(terms, work) * half;
  }
};

/// Globally adaptive Gauss-Legendre bisection over the listed breakpoints.
/// Each piece carries |G(piece) - G(left half) - G(right half)| as its error;
/// the worst piece is split until the summed error meets the tolerance.
inline IntegralResult adaptive_gauss_legendre(const std::function<PrecReal(const PrecReal&)>& f,
                                              std::span<const PrecReal> breakpoints,
                                              const QuadratureConfig& cfg, unsigned order = 20) {
  const Precision p = cfg.precision();
  const Precision work = p.plus(16);
  const GaussLegendreRule rule = GaussLegendreRule::make(order, work);

  struct Piece {
    PrecReal a, b, left, right, value, error;
  };
  std::size_t evals = 0;
  auto G = [&](const PrecReal& a, const PrecReal& b) {
    evals += order;
    return rule.apply(f, a, b, work);
  };
  auto make_piece = [&](PrecReal a, PrecReal b, const PrecReal& coarse) {
    PrecReal m = (a + b) / 2L;
    PrecReal l = G(a, m), r = G(m, b);
    PrecReal v = l + r;
    PrecReal e = abs(coarse - v);
    return Piece{std::move(a), std::move(b), std::move(l), std::move(r), std::move(v), std::move(e)};
  };

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    PrecReal a = breakpoints[i].rounded(work), b = breakpoints[i + 1].rounded(work);
    PrecReal coarse = G(a, b);
    pieces.push_back(make_piece(std::move(a), std::move(b), coarse));
  }

  auto totals = [&](PrecReal& value, PrecReal& error) {
    std::vector<PrecReal> vs, es;
    for (const auto& pc : pieces) {
      vs.push_back(pc.value);
      es.push_back(pc.error);
    }
    value = detail::pairwise_sum(vs, work);
    error = detail::pairwise_sum(es, work) + abs(value) * pow2(-static_cast<long>(p.bits()) + 8, work);
  };

  PrecReal value(work), error(work);
  totals(value, error);
  std::size_t splits = 0;
  while (!(error <= cfg.target(value)) && splits < cfg.max_subdivisions) {
    auto worst = std::max_element(pieces.begin(), pieces.end(),
                                  [](const Piece& x, const Piece& y) { return x.error < y.error; });
    Piece w = std::move(*worst);
    PrecReal m = (w.a + w.b) / 2L;
    *worst = make_piece(w.a, m, w.left);
    pieces.push_back(make_piece(std::move(m), w.b, w.right));
    ++splits;
    totals(value, error);
  }
  IntegralResult res{value.rounded(p), PrecReal(p), error.rounded(p), evals, error <= cfg.target(value)};
  return res;
}

/// Complex integrand on the circle, θ ∈ (-π, π].
using PeriodicIntegrand = std::function<PrecComplex(const PrecReal& theta)>;

/// (1/2π) ∫_{-π}^{π} f(θ) dθ by the trapezoid rule on N uniform nodes,
/// doubling N from `initial_nodes` until successive sums agree.
inline IntegralResult periodic_trapezoid(const PeriodicIntegrand& f, const QuadratureConfig& cfg,
                                         std::size_t initial_nodes = 64,
                                         const PrecReal* rounding_scale = nullptr) {
  const Precision p = cfg.precision();
  const Precision work = p.plus(16);
  const PrecReal two_pi = 2L * const_pi(work);
  const PrecReal pi = const_pi(work);

  IntegralResult res{PrecReal(p), PrecReal(p), PrecReal(p), 0, false};
  PrecComplex mean(work);
  PrecReal mean_abs(work);
  PrecComplex prev(work);
  std::size_t N = std::max<std::size_t>(initial_nodes, 4);

  for (std::size_t level = 0; level <= cfg.max_subdivisions; ++level, N *= 2) {
    // Level 0 evaluates all N nodes; later levels only the new odd-indexed ones.
    const std::size_t stride = level == 0 ? 1 : 2;
    const std::size_t first = level == 0 ? 0 : 1;
    const std::size_t fresh = (N - first + stride - 1) / stride;
    std::vector<PrecComplex> vals(fresh, PrecComplex(work));
    std::vector<PrecReal> mags(fresh, PrecReal(work));
    parallel_for(
        fresh,
        [&](std::size_t i) {
          const std::size_t j = first + i * stride;
          PrecReal theta = two_pi * static_cast<long>(j) / static_cast<long>(N);
          if (theta > pi) theta -= two_pi;
          vals[i] = f(theta);
          mags[i] = norm_abs(vals[i]);
        },
        cfg.threads);
    res.evaluations += fresh;

    PrecComplex s = detail::pairwise_sum(std::span<const PrecComplex>(vals), work);
    PrecReal sa = detail::pairwise_sum(std::span<const PrecReal>(mags), work);
    s /= PrecReal(static_cast<unsigned long>(fresh), work);
    sa /= PrecReal(static_cast<unsigned long>(fresh), work);
    if (level == 0) {
      mean = s;
      mean_abs = sa;
    } else {
      mean += s;
      mean /= PrecReal(2L, work);
      mean_abs = (mean_abs + sa) / 2L;
    }

    if (level >= 1) {
      PrecComplex d = mean;
      d -= prev;
      PrecReal scale = rounding_scale ? max(mean_abs, *rounding_scale) : mean_abs;
      PrecReal rounding = scale * pow2(-static_cast<long>(p.bits()) + 8 + static_cast<long>(bit_width_of(N)), work);
      PrecReal err = norm_abs(d) + rounding;
      if (err <= cfg.target(mean.re) || level == cfg.max_subdivisions) {
        res.value = mean.re.rounded(p);
        res.imag = mean.im.rounded(p);
        res.error_estimate = err.rounded(p);
        res.converged = err <= cfg.target(mean.re);
        return res;
      }
    }
    prev = mean;
  }
  return res;
}

}  // namespace asympartita

#endif  // ASYMPARTITA_QUADRATURE_HPP
