#ifndef ASYMPARTITA_PROB_MODEL_HPP
#define ASYMPARTITA_PROB_MODEL_HPP

// Exponential-1 variables, tilting, the Cramer rate function, CLT variance
// checks and the product measure on partitions with geometric multiplicities.
//
// Monte Carlo runs in double precision. Work is cut into fixed-size chunks,
// each with its own derived stream, and chunk statistics are merged in chunk
// order, so results do not depend on the thread count.

#include "asympartita/asymptotics.hpp"
#include "asympartita/exact_core.hpp"
#include "asympartita/parallel.hpp"
#include "asympartita/saddle_numeric.hpp"
#include "asympartita/special_fn.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace asympartita {

/// Reproducible random stream keyed by (seed, stream_id). Derived substreams
/// extend the key, so chunk j of a run always sees the same numbers.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    key_ = {lo(seed), hi(seed), lo(stream_id), hi(stream_id)};
    reseed();
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RngStream substream(std::uint64_t index) const {
    RngStream s(*this);
    s.key_.push_back(0x9e3779b9u);
    s.key_.push_back(lo(index));
    s.key_.push_back(hi(index));
    s.reseed();
    return s;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1): 53 random bits, centred in their cell.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exponential-1 by inversion.
  double exponential() { return -std::log(uniform()); }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
  void reseed() {
    std::seed_seq seq(key_.begin(), key_.end());
    engine_.seed(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::vector<std::uint32_t> key_;
  std::mt19937_64 engine_;
};

/// Running central moments up to order four, mergeable (Pebay's update).
struct Moments {
  std::uint64_t n = 0;
  double mean = 0, m2 = 0, m3 = 0, m4 = 0;

  void add(double x) {
    const std::uint64_t n1 = n++;
    const double delta = x - mean;
    const double dn = delta / static_cast<double>(n);
    const double dn2 = dn * dn;
    const double t1 = delta * dn * static_cast<double>(n1);
    mean += dn;
    m4 += t1 * dn2 * (static_cast<double>(n) * n - 3.0 * n + 3) + 6 * dn2 * m2 - 4 * dn * m3;
    m3 += t1 * dn * (static_cast<double>(n) - 2) - 3 * dn * m2;
    m2 += t1;
  }

  void merge(const Moments& b) {
    if (b.n == 0) return;
    if (n == 0) {
      *this = b;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(b.n), nt = na + nb;
    const double d = b.mean - mean, d2 = d * d, d3 = d2 * d, d4 = d2 * d2;
    Moments r;
    r.n = n + b.n;
    r.mean = mean + d * nb / nt;
    r.m2 = m2 + b.m2 + d2 * na * nb / nt;
    r.m3 = m3 + b.m3 + d3 * na * nb * (na - nb) / (nt * nt) + 3 * d * (na * b.m2 - nb * m2) / nt;
    r.m4 = m4 + b.m4 + d4 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
           6 * d2 * (na * na * b.m2 + nb * nb * m2) / (nt * nt) + 4 * d * (na * b.m3 - nb * m3) / nt;
    *this = r;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double central4() const { return n > 0 ? m4 / static_cast<double>(n) : 0.0; }
  /// Large-sample standard error of the sample variance, sqrt((mu4 - sigma^4)/n).
  double variance_standard_error() const {
    const double s2 = m2 / static_cast<double>(n);
    return std::sqrt(std::max(0.0, central4() - s2 * s2) / static_cast<double>(n));
  }
};

struct SampleStats {
  std::uint64_t count = 0;
  double mean = 0;
  double variance = 0;
  double standard_error = 0;

  static SampleStats from(const Moments& m) {
    return {m.n, m.mean, m.variance(), std::sqrt(m.variance() / static_cast<double>(m.n))};
  }
};

inline constexpr std::size_t sample_chunk = 4096;

/// Runs draw(stream) `samples` times over chunked substreams and merges the
/// per-chunk moments in chunk order.
template <typename Draw>
Moments sample_moments(const RngStream& stream, std::size_t samples, Draw&& draw,
                       unsigned threads = default_thread_count()) {
  if (samples < 1) throw DomainError("sample count must be positive");
  const std::size_t chunks = (samples + sample_chunk - 1) / sample_chunk;
  std::vector<Moments> parts(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        RngStream s = stream.substream(c);
        const std::size_t lo = c * sample_chunk, hi = std::min(samples, lo + sample_chunk);
        for (std::size_t i = lo; i < hi; ++i) parts[c].add(draw(s));
      },
      threads);
  Moments total;
  for (const auto& m : parts) total.merge(m);
  return total;
}

/// Lambda*(x) = x - 1 - ln x.
inline PrecReal rate_function(const PrecReal& x) {
  if (!(x > 0.0)) throw DomainError("rate_function requires x > 0");
  return x - 1L - log(x);
}

/// Lambda(t) = ln E[e^{tT}] = -ln(1 - t).
inline PrecReal cumulant_gf(const PrecReal& t) {
  if (!(t < 1.0)) throw DomainError("cumulant_gf requires t < 1");
  return -log1p(-t);
}

inline std::vector<double> sample_exponentials(RngStream& stream, std::size_t count) {
  if (count < 1) throw DomainError("sample_exponentials: count must be positive");
  std::vector<double> out(count);
  for (auto& x : out) x = stream.exponential();
  return out;
}

/// Mean test: |mean - expected| within `bands` standard errors.
struct MeanCheck {
  SampleStats stats;
  double expected = 0;
  double z() const { return stats.standard_error > 0 ? (stats.mean - expected) / stats.standard_error : 0.0; }
  bool within(double bands = 4.0) const {
    return std::abs(stats.mean - expected) <= bands * stats.standard_error;
  }
};

/// Monte Carlo estimate of E[e^{aT} T^m] against m!/(1-a)^{m+1}, returned as
/// statistics of (estimate - exact). The left side is sampled directly, by
/// importance sampling from Exp(lambda) with lambda = min(1, 1.5(1-a)); the
/// weighted estimator T^m e^{-(1-a-lambda)T}/lambda has finite variance for
/// every |a| < 1, unlike plain e^{aT}T^m once a >= 1/2.
inline MeanCheck tilting_check(double a, unsigned m, std::size_t samples, const RngStream& stream) {
  if (!(std::abs(a) < 1.0)) throw DomainError("tilting_check requires |a| < 1");
  if (m > 4) throw DomainError("tilting_check requires m <= 4");
  const double lambda = std::min(1.0, 1.5 * (1.0 - a));
  double fact = 1;
  for (unsigned j = 2; j <= m; ++j) fact *= j;
  const double exact = fact / std::pow(1.0 - a, m + 1);
  Moments mom = sample_moments(stream, samples, [&](RngStream& s) {
    const double t = s.exponential() / lambda;
    return std::pow(t, m) * std::exp(-(1.0 - a - lambda) * t) / lambda - exact;
  });
  return {SampleStats::from(mom), 0.0};
}

/// Plain sampling of T/(1-a) against the tilted mean 1/(1-a).
inline MeanCheck tilted_mean_check(double a, std::size_t samples, const RngStream& stream) {
  if (!(std::abs(a) < 1.0)) throw DomainError("tilted_mean_check requires |a| < 1");
  Moments mom = sample_moments(stream, samples, [&](RngStream& s) { return s.exponential() / (1.0 - a); });
  return {SampleStats::from(mom), 1.0 / (1.0 - a)};
}

/// Variance test on a sampled scalar, with a fourth-moment normality check.
struct VarianceCheck {
  SampleStats stats;
  double variance_se = 0;    // standard error of stats.variance
  double target = 0;         // limiting variance
  double finite_target = 0;  // exact variance of the truncated finite-n sum
  double kurtosis_ratio = 0; // mu4 / (3 var^2)

  bool variance_within(double bands = 4.0) const { return std::abs(stats.variance - target) <= bands * variance_se; }
  bool mean_within(double bands = 4.0) const { return std::abs(stats.mean) <= bands * stats.standard_error; }
  bool kurtosis_within(double rel = 0.05) const { return std::abs(kurtosis_ratio - 1.0) <= rel; }
};

namespace detail {
inline VarianceCheck weighted_exponential_sum(const std::vector<double>& w, double target, std::size_t samples,
                                              const RngStream& stream) {
  double exact = 0;
  for (double x : w) exact += x * x;
  Moments mom = sample_moments(stream, samples, [&](RngStream& s) {
    double acc = 0;
    for (double x : w) acc += (s.exponential() - 1.0) * x;
    return acc;
  });
  VarianceCheck v{SampleStats::from(mom), mom.variance_standard_error(), target, exact, 0};
  const double s2 = mom.m2 / static_cast<double>(mom.n);
  v.kurtosis_ratio = mom.central4() / (3.0 * s2 * s2);
  return v;
}
}  // namespace detail

/// S = eps^{1/2} sum_k (T_k - 1) eps k/(r^{-k} - 1); Var S -> pi^2/3 - 2 zeta(3).
/// Weights are kept while eps k <= 16, beyond which (x/(e^x-1))^2 < 4e-12.
inline VarianceCheck clt_weighted_sum_check(const PartitionRegime& reg, std::size_t samples, const RngStream& stream) {
  if (samples < 10000) throw DomainError("clt_weighted_sum_check requires at least 1e4 samples");
  const double eps = reg.eps.to_double();
  const std::size_t K = static_cast<std::size_t>(std::ceil(16.0 / eps));
  std::vector<double> w(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double x = eps * static_cast<double>(k);
    w[k - 1] = std::sqrt(eps) * x / std::expm1(x);
  }
  return detail::weighted_exponential_sum(w, bose_square_integral(Precision{128}).closed_form.to_double(), samples,
                                          stream);
}

/// Y = n^{-1/2} sum_{k>=0} (T_k - 1) w_k with w_k = r e^{-beta k/n}/(1 - r e^{-beta k/n}).
/// Var Y -> sigma^2/beta (= e - 2 at beta = 1). Terms are dropped once the
/// remaining variance r^2 e^{-2 beta K/n}/(2 beta (1-r)^2) is below 1e-6 of it.
inline VarianceCheck q_clt_variance_check(const QRegime& reg, std::size_t samples, const RngStream& stream) {
  if (samples < 10000) throw DomainError("q_clt_variance_check requires at least 1e4 samples");
  const double beta = reg.beta.to_double(), r = reg.r.to_double();
  const double n = static_cast<double>(reg.n);
  const double target = reg.clt_variance.to_double();
  const double tail_scale = r * r / (2.0 * beta * (1 - r) * (1 - r));
  const double K = std::ceil(n * std::log(tail_scale / (1e-6 * target)) / (2.0 * beta));
  std::vector<double> w(static_cast<std::size_t>(std::max(K, 1.0)) + 1);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double y = r * std::exp(-beta * static_cast<double>(k) / n);
    w[k] = y / (1.0 - y) / std::sqrt(n);
  }
  return detail::weighted_exponential_sum(w, target, samples, stream);
}

namespace detail {
// Number of full geometric multiplicities: nu = floor(ln U / (k ln r)), with
// the common nu = 0 case (U > r^k) decided without a logarithm.
inline std::uint64_t geometric_draw(double u, double r_pow_k, double k_log_r) {
  if (u > r_pow_k) return 0;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::log(u) / k_log_r)));
}

struct SamplerTable {
  std::vector<double> r_pow;  // r^k at index k - 1
  std::vector<double> k_log_r;
};

inline SamplerTable sampler_table(const PartitionRegime& reg, std::size_t K) {
  SamplerTable t;
  const double lr = -reg.eps.to_double();
  for (std::size_t k = 1; k <= K; ++k) {
    t.r_pow.push_back(std::exp(lr * static_cast<double>(k)));
    t.k_log_r.push_back(lr * static_cast<double>(k));
  }
  return t;
}

inline double sampler_tail_mass(const PartitionRegime& reg, std::size_t K) {
  // sum_{k>K} k r^k/(1-r^k), summed until terms are negligible
  const double eps = reg.eps.to_double();
  double tail = 0;
  for (std::size_t k = K + 1;; ++k) {
    const double x = eps * static_cast<double>(k);
    const double term = static_cast<double>(k) / std::expm1(x);
    tail += term;
    if (term < 1e-18 * tail || x > 800) break;
  }
  return tail;
}
}  // namespace detail

/// Smallest K whose omitted expected mass sum_{k>K} k r^k/(1 - r^k) is below `mass`.
inline std::size_t sampler_truncation(const PartitionRegime& reg, double mass = 1.0) {
  std::size_t K = 1;
  while (detail::sampler_tail_mass(reg, K) >= mass) K *= 2;
  std::size_t lo = K / 2, hi = K;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (detail::sampler_tail_mass(reg, mid) < mass ? hi : lo) = mid;
  }
  return hi;
}

/// One partition from the product measure P(nu(k) = m) = (1 - r^k) r^{km}, k <= K_trunc.
inline Partition sample_partition(const PartitionRegime& reg, std::size_t K_trunc, RngStream& stream) {
  if (K_trunc < 1) throw DomainError("sample_partition: K_trunc must be >= 1");
  if (!(detail::sampler_tail_mass(reg, K_trunc) < 1.0))
    throw DomainError("sample_partition: K_trunc leaves expected truncated mass >= 1");
  const auto table = detail::sampler_table(reg, K_trunc);
  Partition::Multiplicities nu;
  for (std::size_t k = 1; k <= K_trunc; ++k) {
    const std::uint64_t m = detail::geometric_draw(stream.uniform(), table.r_pow[k - 1], table.k_log_r[k - 1]);
    if (m) nu[k] = m;
  }
  return Partition(std::move(nu));
}

/// Exact mean size under the truncated measure, sum_{k<=K} k r^k/(1 - r^k).
inline double truncated_mean_size(const PartitionRegime& reg, std::size_t K) {
  const double eps = reg.eps.to_double();
  double s = 0;
  for (std::size_t k = 1; k <= K; ++k) s += static_cast<double>(k) / std::expm1(eps * static_cast<double>(k));
  return s;
}

struct PartitionSizeSample {
  SampleStats size;
  std::vector<std::uint64_t> histogram;  // counts of size 0..histogram.size()-1
  std::uint64_t overflow = 0;            // samples larger than the histogram range
};

/// Sizes of `samples` independent draws of sample_partition, without building
/// the multiplicity maps. Draw i uses the same uniforms as sample_partition
/// would on chunk substream i / sample_chunk.
inline PartitionSizeSample sample_partition_sizes(const PartitionRegime& reg, std::size_t K_trunc,
                                                  std::size_t samples, const RngStream& stream,
                                                  std::size_t histogram_max = 0,
                                                  unsigned threads = default_thread_count()) {
  if (!(detail::sampler_tail_mass(reg, K_trunc) < 1.0))
    throw DomainError("sample_partition_sizes: K_trunc leaves expected truncated mass >= 1");
  if (samples < 1) throw DomainError("sample count must be positive");
  const auto table = detail::sampler_table(reg, K_trunc);
  const std::size_t chunks = (samples + sample_chunk - 1) / sample_chunk;
  std::vector<Moments> parts(chunks);
  std::vector<std::vector<std::uint64_t>> hists(chunks, std::vector<std::uint64_t>(histogram_max + 1));
  std::vector<std::uint64_t> over(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        RngStream s = stream.substream(c);
        const std::size_t lo = c * sample_chunk, hi = std::min(samples, lo + sample_chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          std::uint64_t size = 0;
          for (std::size_t k = 1; k <= K_trunc; ++k)
            size += k * detail::geometric_draw(s.uniform(), table.r_pow[k - 1], table.k_log_r[k - 1]);
          parts[c].add(static_cast<double>(size));
          if (size <= histogram_max)
            ++hists[c][size];
          else
            ++over[c];
        }
      },
      threads);
  PartitionSizeSample out;
  Moments total;
  out.histogram.assign(histogram_max + 1, 0);
  for (std::size_t c = 0; c < chunks; ++c) {
    total.merge(parts[c]);
    for (std::size_t m = 0; m <= histogram_max; ++m) out.histogram[m] += hists[c][m];
    out.overflow += over[c];
  }
  out.size = SampleStats::from(total);
  return out;
}

/// P(size = m) = p_K(m) r^m prod_{k<=K}(1 - r^k) for m = 0..m_max, where p_K
/// counts partitions with parts at most K (equal to p(m) for m <= K).
inline std::vector<double> truncated_size_distribution(const PartitionRegime& reg, std::size_t K, std::size_t m_max) {
  std::vector<mpz_class> count(m_max + 1);
  count[0] = 1;
  for (std::size_t k = 1; k <= K && k <= m_max; ++k)
    for (std::size_t m = k; m <= m_max; ++m) count[m] += count[m - k];
  const Precision p{128};
  PrecReal r = reg.r.rounded(p);
  PrecReal norm(1L, p), rk(1L, p);
  for (std::size_t k = 1; k <= K; ++k) {
    rk *= r;
    norm *= 1.0 - rk;
  }
  std::vector<double> out(m_max + 1);
  PrecReal rm(1L, p);
  for (std::size_t m = 0; m <= m_max; ++m) {
    out[m] = (PrecReal(count[m], p) * rm * norm).to_double();
    rm *= r;
  }
  return out;
}

struct MinorArcResult {
  SampleStats stats;          // of X e^{-exact_log_mean}, where X is the sampled modulus
  double log_mean = 0;        // ln of the Monte Carlo mean of X
  double exact_log_mean = 0;  // -sum_k ln(1 + 2 c_k sin^2(theta k/2))
  double bound = 0;           // minor_arc_bound(reg, theta/eps)
  double margin = 0.2;
  /// The suppression predicted from the mean-field exponent:
  /// mean < exp(-(1 - margin) bound).
  bool below_bound() const { return log_mean < -(1.0 - margin) * bound; }
};

/// Monte Carlo mean of exp(-2 sum_k T_k c_k sin^2(theta k/2)), c_k = r^k/(1 - r^k).
/// Terms with c_k below 1e-18 are dropped. Since E[e^{-lambda T}] = 1/(1+lambda),
/// the exact mean is prod_k 1/(1 + 2 c_k sin^2(theta k/2)).
inline MinorArcResult minor_arc_empirical(const PartitionRegime& reg, const PrecReal& theta, std::size_t samples,
                                          const RngStream& stream, const QuadratureConfig& cfg, double margin = 0.2) {
  const double th = theta.to_double();
  if (!(std::abs(th) <= M_PI) || th == 0.0) throw DomainError("minor_arc_empirical requires 0 < |theta| <= pi");
  const double eps = reg.eps.to_double();
  const std::size_t K = static_cast<std::size_t>(std::ceil(std::log(1e18) / eps));
  std::vector<double> lam(K);
  double exact_log = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double s = std::sin(th * static_cast<double>(k) / 2.0);
    lam[k - 1] = 2.0 / std::expm1(eps * static_cast<double>(k)) * s * s;
    exact_log -= std::log1p(lam[k - 1]);
  }
  Moments mom = sample_moments(stream, samples, [&](RngStream& s) {
    double e = 0;
    for (double l : lam) e += l * s.exponential();
    return std::exp(-e - exact_log);
  });
  MinorArcResult out;
  out.stats = SampleStats::from(mom);
  out.exact_log_mean = exact_log;
  out.log_mean = exact_log + std::log(mom.mean);
  out.bound = minor_arc_bound(reg, PrecReal(std::abs(th) / eps, cfg.precision()), cfg).value.to_double();
  out.margin = margin;
  return out;
}

/// Major/minor arc split angle eta R_n with R_n = sqrt(ln(n)/C).
inline double partition_minor_arc_cutoff(const PartitionRegime& reg, double C) {
  if (!(C > 0)) throw DomainError("cutoff constant C must be > 0");
  return reg.eta.to_double() * std::sqrt(std::log(static_cast<double>(reg.n)) / C);
}

/// q-regime split angle R_n/sqrt(n) with R_n = K sqrt(ln n).
inline double q_minor_arc_cutoff(std::uint64_t n, double K = 4.0) {
  if (!(K > 0)) throw DomainError("cutoff constant K must be > 0");
  return K * std::sqrt(std::log(static_cast<double>(n))) / std::sqrt(static_cast<double>(n));
}

}  // namespace asympartita

#endif  // ASYMPARTITA_PROB_MODEL_HPP
