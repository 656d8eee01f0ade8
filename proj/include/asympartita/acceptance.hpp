#ifndef ASYMPARTITA_ACCEPTANCE_HPP
#define ASYMPARTITA_ACCEPTANCE_HPP

// The end-to-end acceptance suite: each criterion is a list of named checks
// plus a wall-clock budget. Shared by `verify` and the acceptance binary.

#include "asympartita/asymptotics.hpp"
#include "asympartita/diagnostic.hpp"
#include "asympartita/exact_core.hpp"
#include "asympartita/prob_model.hpp"
#include "asympartita/saddle_numeric.hpp"
#include "asympartita/special_fn.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace asympartita {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Diagnostic> checks;
  double seconds = 0;
  double budget = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  /// The check that decides the verdict: first failure, else the runtime line.
  const Diagnostic& headline() const {
    for (const auto& c : checks)
      if (!c.pass) return c;
    return checks.back();
  }
};

inline constexpr int criterion_count = 11;

namespace detail {

class CheckList {
 public:
  explicit CheckList(std::vector<Diagnostic>& out) : out_(out) {}
  // |measured| <= tol
  void within(std::string name, double measured, double tol, std::string detail = {}) {
    out_.push_back({std::move(name), std::abs(measured) <= tol, measured, tol, std::move(detail)});
  }
  void below(std::string name, double measured, double limit, std::string detail = {}) {
    out_.push_back({std::move(name), measured < limit, measured, limit, std::move(detail)});
  }
  void truth(std::string name, bool ok, double measured = 0, double tol = 0, std::string detail = {}) {
    out_.push_back({std::move(name), ok, measured, tol, std::move(detail)});
  }
  void interval(std::string name, double measured, double lo, double hi) {
    std::ostringstream d;
    d << "interval [" << lo << ", " << hi << "]";
    out_.push_back({std::move(name), measured >= lo && measured <= hi, measured, hi - lo, d.str()});
  }
  // |z| <= bands, reported in units of the standard error
  void bands(std::string name, double z, double bands = 4.0, std::string detail = {}) {
    out_.push_back({std::move(name), std::abs(z) <= bands, z, bands, detail.empty() ? "z-score" : detail});
  }

 private:
  std::vector<Diagnostic>& out_;
};

inline double ld(const PrecReal& x) { return x.to_double(); }

inline void oracle_agreement(CheckList& c, std::uint64_t) {
  auto table = partition_count_table(100);
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n <= 60; ++n) mismatches += !(table[n] == partition_count_bruteforce(n));
  c.truth("recurrence_equals_bruteforce_n_le_60", mismatches == 0, static_cast<double>(mismatches), 0,
          "mismatch count");
  c.truth("p_100_equals_190569292", table[100] == 190569292u, static_cast<double>(table[100].to_u64()), 0,
          "p(100)");
}

inline void cauchy_integral(CheckList& c, std::uint64_t) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= 50; ++n) ns.push_back(n);
  ns.insert(ns.end(), {100, 200, 500});
  const Precision p{256};
  QuadratureConfig cfg(10, 1e-6, 1e-40, p);
  auto table = partition_count_table(500);
  std::size_t wrong = 0;
  double worst = 0;
  std::string first_bad;
  for (auto n : ns) {
    try {
      PartitionRegime reg(n, p);
      auto res = partition_cauchy_integral(n, partition_cauchy_truncation(reg, cfg.abs_tolerance), cfg);
      worst = std::max(worst, res.error_estimate.to_double());
      if (!(certify_integer(res) == table[n])) throw DomainError("rounded value differs from p(n)");
    } catch (const std::exception& e) {
      if (!wrong++) first_bad = "n=" + std::to_string(n) + ": " + e.what();
    }
  }
  c.truth("cauchy_rounds_to_p_n", wrong == 0, static_cast<double>(wrong), 0,
          wrong ? first_bad : "n in 1..50, 100, 200, 500");
  c.below("cauchy_certified_error", worst, 0.5, "max error estimate");
}

inline void hardy_ramanujan(CheckList& c, std::uint64_t) {
  const std::vector<std::uint64_t> ns{100, 1000, 10000, 100000};
  auto rows = ratio_report(RatioKind::partition(Precision{128}), ns);
  bool decreasing = true;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double r = ld(rows[i].ratio);
    if (!(r > 1.0) || (i && !(r < ld(rows[i - 1].ratio)))) decreasing = false;
    lx.push_back(std::log(static_cast<double>(ns[i])));
    ly.push_back(std::log(r - 1.0));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / lx.size(), my += ly[i] / ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  const double slope = sxy / sxx;
  c.truth("hr_ratio_decreasing_to_1", decreasing, ld(rows.back().ratio) - 1.0, 0, "ratio - 1 at n = 1e5");
  c.interval("hr_loglog_slope", slope, -0.65, -0.35);
}

inline void log_product_residual(CheckList& c, std::uint64_t) {
  const Precision p{256};
  double prev = INFINITY;
  bool shrinking = true;
  double last = 0;
  for (double e : {0.1, 0.05, 0.02, 0.01, 0.005}) {
    PrecReal eps(e, p);
    PrecReal res = em_log_product_sum(eps) - square(const_pi(p)) / (6L * eps) - log(eps / (2L * const_pi(p))) / 2L;
    last = std::abs(ld(res));
    if (!(last < prev)) shrinking = false;
    prev = last;
  }
  c.truth("residual_magnitude_decreasing", shrinking, last, 0, "|residual| at eps = 0.005");
  c.below("residual_at_eps_0.005", last, 0.02);
}

inline void stirling(CheckList& c, std::uint64_t) {
  auto rows = ratio_report(RatioKind::stirling(Precision{128}), {100, 200});
  const double e100 = std::abs(1.0 / ld(rows[0].ratio) - 1.0), e200 = std::abs(1.0 / ld(rows[1].ratio) - 1.0);
  c.below("stirling_error_n_100", e100, 1.0 / 1000, "|n!/estimate - 1| < 1/(10n)");
  c.truth("stirling_error_decreasing_n_200", e200 < e100, e200, e100, "error at n = 200 against n = 100");
}

inline void gamma_limit(CheckList& c, std::uint64_t) {
  const Precision p{128};
  PrecReal v = gamma_limit_estimate(PrecReal(0.5, p), 1000000);
  c.below("gamma_half_n_1e6", std::abs(ld(v - sqrt(const_pi(p)))), 1e-5, "|estimate - sqrt(pi)|");
  double worst = 0;
  for (std::uint64_t n : {1u, 2u, 3u, 10u, 100u, 1000u, 1000000u})
    worst = std::max(worst, std::abs(ld(gamma_limit_estimate(PrecReal(1L, p), n) - 1L)));
  c.truth("gamma_one_exactly_1", worst == 0.0, worst, 0, "max |estimate - 1| over n in {1..1e6}");
}

inline void series_constants(CheckList& c, std::uint64_t) {
  auto sine = sine_product_log_sum(1000000);
  c.within("sine_product_log_sum_1e6", ld(sine.value - log(const_pi() / 2L)), 5e-7, "difference from ln(pi/2)");
  auto st = stirling_series_sum(10000);
  c.within("stirling_series_sum_1e4", ld(st.value - (1L - const_log2()) / 2L), 1e-5,
           "difference from (1 - ln 2)/2");
}

inline void dilog_and_bose(CheckList& c, std::uint64_t) {
  const Precision p{256};
  PrecReal pi2 = square(const_pi(p));
  c.within("dilog_at_1", ld(dilog(PrecReal(1L, p)) - pi2 / 6L), 1e-12, "difference from pi^2/6");
  c.within("dilog_at_minus_1", ld(dilog(PrecReal(-1L, p)) + pi2 / 12L), 1e-12, "difference from -pi^2/12");
  auto b1 = bose_integral(1, p), b2 = bose_integral(2, p), sq = bose_square_integral(p);
  c.below("bose_integral_1_closed_vs_quadrature", b1.difference().to_double(), 1e-15);
  c.below("bose_integral_2_closed_vs_quadrature", b2.difference().to_double(), 1e-15);
  c.below("bose_square_closed_vs_quadrature", sq.difference().to_double(), 1e-15);
}

inline void binomial_integrals(CheckList& c, std::uint64_t seed) {
  const Precision p{256};
  QuadratureConfig theta_cfg(12, 1e-40, 1e-30, p);
  auto theta_dev = [&](std::uint64_t n) {
    auto r = binomial_theta_integral(n, PrecReal(1L, p), theta_cfg);
    detail::require_converged(r, "binomial_theta_integral");
    return std::abs(ld(r.value) * std::sqrt(2 * M_PI * static_cast<double>(n)) - 1.0);
  };
  const double d1 = theta_dev(10000), d2 = theta_dev(20000);
  c.below("theta_integral_n_1e4", d1, 0.05, "|value sqrt(2 pi n) - 1|");
  c.truth("theta_integral_shrinks_on_doubling", d2 < d1, d2, d1, "deviation at n = 2e4 against n = 1e4");

  QuadratureConfig tau_cfg(400, 1e-30, 1e-25, p);
  for (double s : {0.5, 1.0, 2.0}) {
    auto r = binomial_tau_integral(10000, PrecReal(s, p), PrecReal(0.3, p), tau_cfg);
    detail::require_converged(r, "binomial_tau_integral");
    std::ostringstream name;
    name << "tau_integral_s_" << s;
    c.below(name.str(), std::abs(10000 * ld(r.value) - 1.0), 0.05, "|n value - 1| at n = 1e4");
  }

  RngStream gen(seed, 9);
  QuadratureConfig inner_cfg(10, 1e-50, 1e-50, p);
  std::size_t bad = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t n = gen.next_u64() % 40;
    PrecReal t(0.1 + 19.9 * gen.uniform(), p), r(0.05 + 0.9 * gen.uniform(), p);
    auto res = binomial_inner_integral_exact_check(n, t, r, inner_cfg);
    PrecReal exact = pow(t * r, static_cast<long>(n)) / factorial(n).to_real(p);
    PrecReal err = abs(res.value - exact);
    if (!res.converged || err > res.error_estimate) ++bad;
    worst = std::max(worst, ld(err / max(exact, PrecReal(1e-300, p))));
  }
  c.truth("inner_integral_20_random_triples", bad == 0, worst, 0, "max relative error; all within estimate");
}

inline void q_asymptotics(CheckList& c, std::uint64_t) {
  const Precision p{256};
  PrecReal a(0.5, p);
  auto rel_err = [&](double e) {
    PrecReal eps(e, p);
    PrecReal exact = q_pochhammer(a, exp(-eps), infinite).value;
    return ld(q_infinite_product_estimate(a, eps) / exact) - 1.0;
  };
  const double e1 = rel_err(0.01), e2 = rel_err(0.005);
  c.below("q_product_ratio_eps_0.01", std::abs(e1), 0.01, "|estimate/exact - 1|");
  c.within("q_product_error_halves", e1 / e2 - 2.0, 0.1, "error(0.01)/error(0.005) - 2");

  PrecReal beta(1L, p);
  for (auto kind : {RatioKind::q_pochhammer(beta), RatioKind::q_factorial(beta)}) {
    auto rows = ratio_report(kind, {1000, 10000});
    const double d3 = std::abs(ld(rows[0].ratio) - 1.0), d4 = std::abs(ld(rows[1].ratio) - 1.0);
    c.below(kind.name() + "_ratio_n_1e3", d3, 0.05, "|ratio - 1| at beta = 1");
    c.truth(kind.name() + "_improves_n_1e4", d4 < d3, d4, d3, "|ratio - 1| at n = 1e4 against n = 1e3");
  }
}

inline void probabilistic_layer(CheckList& c, std::uint64_t seed) {
  const Precision p{128};
  std::uint64_t id = 1100;
  for (double a : {0.0, 0.3, 0.6}) {
    for (unsigned m : {0u, 1u, 2u}) {
      auto t = tilting_check(a, m, 100000, RngStream(seed, id++));
      std::ostringstream name;
      name << "tilting_a_" << a << "_m_" << m;
      c.bands(name.str(), t.z());
    }
  }
  {
    auto once = tilting_check(0.3, 1, 20000, RngStream(seed, 1190));
    auto again = tilting_check(0.3, 1, 20000, RngStream(seed, 1190));
    c.truth("seeded_rerun_bit_identical", once.stats.mean == again.stats.mean && once.stats.variance == again.stats.variance);
  }

  auto clt = clt_weighted_sum_check(PartitionRegime(10000, p), 100000, RngStream(seed, 1120));
  c.bands("clt_variance_n_1e4", (clt.stats.variance - clt.target) / clt.variance_se, 4.0,
          "variance z-score against pi^2/3 - 2 zeta(3)");
  c.within("clt_kurtosis_ratio", clt.kurtosis_ratio - 1.0, 0.05, "mu4/(3 var^2) - 1");

  auto q = q_clt_variance_check(QRegime(PrecReal(1L, p), 1000), 100000, RngStream(seed, 1130));
  c.bands("q_clt_variance_beta_1", (q.stats.variance - q.target) / q.variance_se, 4.0,
          "variance z-score against e - 2 (n = 1e3)");

  {
    PartitionRegime reg(400, p);
    auto s = sample_partition_sizes(reg, sampler_truncation(reg), 100000, RngStream(seed, 1140));
    c.within("mean_size_n_400", s.size.mean / 400.0 - 1.0, 0.01, "empirical mean/n - 1");
  }
  {
    PartitionRegime reg(30, p);
    const std::size_t K = std::max<std::size_t>(60, sampler_truncation(reg));
    const std::size_t N = 1000000;
    auto s = sample_partition_sizes(reg, K, N, RngStream(seed, 1150), 30);
    const double expect = truncated_size_distribution(reg, K, 30)[30];
    const double got = static_cast<double>(s.histogram[30]) / N;
    c.bands("point_mass_size_30", (got - expect) / std::sqrt(expect * (1 - expect) / N), 4.0,
            "binomial z-score against p(30) r^30 prod(1 - r^k)");
  }
}

struct CriterionEntry {
  const char* name;
  double budget;
  void (*run)(CheckList&, std::uint64_t);
};

inline const std::vector<CriterionEntry>& criteria() {
  static const std::vector<CriterionEntry> all{
      {"oracle_agreement", 5, oracle_agreement},
      {"cauchy_integral_equals_p_n", 60, cauchy_integral},
      {"hardy_ramanujan_convergence", 120, hardy_ramanujan},
      {"log_product_residual", 10, log_product_residual},
      {"stirling", 1, stirling},
      {"gamma_limit", 5, gamma_limit},
      {"series_constants", 10, series_constants},
      {"dilog_and_bose_integrals", 5, dilog_and_bose},
      {"binomial_integrals", 60, binomial_integrals},
      {"q_asymptotics", 30, q_asymptotics},
      {"probabilistic_layer", 120, probabilistic_layer},
  };
  return all;
}

}  // namespace detail

/// Runs criterion id (1-based). Exceptions become a failed check.
inline CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > criterion_count) throw DomainError("criterion must be in 1.." + std::to_string(criterion_count));
  const auto& entry = detail::criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult out;
  out.id = id;
  out.name = entry.name;
  out.budget = entry.budget;
  detail::CheckList checks(out.checks);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    entry.run(checks, seed);
  } catch (const std::exception& e) {
    checks.truth("completed", false, 0, 0, e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  checks.below("runtime_seconds", out.seconds, out.budget);
  return out;
}

}  // namespace asympartita

#endif  // ASYMPARTITA_ACCEPTANCE_HPP
