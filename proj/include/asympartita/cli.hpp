#ifndef ASYMPARTITA_CLI_HPP
#define ASYMPARTITA_CLI_HPP

// Command-line front end. Each verb/target pair is a nested subcommand with
// its own keys, so a key that belongs to another target is a usage error.
// Exit status: 0 all checks pass, 1 any check fails, 2 usage error.

#include "asympartita/acceptance.hpp"
#include "asympartita/asymptotics.hpp"
#include "asympartita/exact_core.hpp"
#include "asympartita/prob_model.hpp"
#include "asympartita/report.hpp"
#include "asympartita/saddle_numeric.hpp"
#include "asympartita/special_fn.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace asympartita::cli {

inline constexpr const char* precision_env = "ASYMPARTITA_PRECISION_BITS";

struct Context {
  Report report;
  Precision precision;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::ostream* log = &std::cerr;

  RngStream stream(std::uint64_t id) const { return RngStream(*seed, id); }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double d(const PrecReal& x) { return x.to_double(); }
inline std::int64_t i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

inline PrefactorConvention convention_of(const std::string& s) {
  return s == "printed" ? PrefactorConvention::as_printed : PrefactorConvention::derived;
}

inline void stats_row(Report& r, const std::string& label, const SampleStats& s) {
  r.add_row({label, i64(s.count), s.mean, s.variance, s.standard_error});
}

inline const std::vector<std::string> stats_columns{"quantity", "count", "mean", "variance", "standard_error"};

// Registers one leaf subcommand; `body` runs if it is the one selected.
class Leaves {
 public:
  CLI::App* add(CLI::App* verb, const std::string& name, const std::string& help,
                std::function<void(Context&)> body) {
    CLI::App* sub = verb->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([this, body, sub] {
      chosen_ = body;
      const CLI::App* parent = sub->get_parent();
      const bool top = parent->get_parent() == nullptr;
      verb_ = top ? sub->get_name() : parent->get_name();
      path_ = top ? sub->get_name() : parent->get_name() + " " + sub->get_name();
    });
    return sub;
  }
  const std::function<void(Context&)>& chosen() const { return chosen_; }
  const std::string& path() const { return path_; }
  const std::string& verb() const { return verb_; }

 private:
  std::function<void(Context&)> chosen_;
  std::string path_;
  std::string verb_;
};

inline void add_exact(CLI::App& app, Leaves& leaves, std::vector<std::uint64_t>& ns, double& a, double& q) {
  CLI::App* verb = app.add_subcommand("exact", "exact oracles");
  verb->fallthrough();
  verb->require_subcommand(1);

  auto* part = leaves.add(verb, "partition", "p(n) by the pentagonal recurrence", [&](Context& c) {
    c.report.columns = {"n", "p_n", "log_p_n", "digits"};
    auto table = partition_count_table(*std::max_element(ns.begin(), ns.end()));
    for (auto k : ns) c.report.add_row({i64(k), big_value(table[k]), k ? d(table[k].log(Precision{64})) : 0.0,
                                        i64(table[k].decimal_digits())});
  });
  part->add_option("--n,--ns", ns, "n or comma-separated list")->required()->delimiter(',');

  auto* brute = leaves.add(verb, "bruteforce", "p(n) by enumeration, n <= 64", [&](Context& c) {
    c.report.columns = {"n", "p_n"};
    for (auto k : ns) c.report.add_row({i64(k), big_value(partition_count_bruteforce(k))});
  });
  brute->add_option("--n,--ns", ns)->required()->delimiter(',');

  auto* fact = leaves.add(verb, "factorial", "n!", [&](Context& c) {
    c.report.columns = {"n", "factorial", "log_factorial"};
    for (auto k : ns) {
      BigNat f = factorial(k);
      c.report.add_row({i64(k), big_value(f), d(f.log(Precision{64}))});
    }
  });
  fact->add_option("--n,--ns", ns)->required()->delimiter(',');

  auto* qp = leaves.add(verb, "qpoch", "(a; q)_n, or (a; q)_inf without --n", [&](Context& c) {
    c.report.columns = {"a", "q", "n", "value", "error_bound"};
    PrecReal pa(a, c.precision), pq(q, c.precision);
    if (ns.empty()) {
      auto v = q_pochhammer(pa, pq, infinite);
      c.report.add_row({a, q, std::string("inf"), d(v.value), d(v.error_bound)});
    } else {
      for (auto k : ns) c.report.add_row({a, q, i64(k), d(q_pochhammer(pa, pq, k)), 0.0});
    }
  });
  qp->add_option("--a", a)->required();
  qp->add_option("--q", q)->required();
  qp->add_option("--n,--ns", ns)->delimiter(',');

  auto* qf = leaves.add(verb, "qfactorial", "[n]_q!", [&](Context& c) {
    c.report.columns = {"n", "q", "value", "log_value"};
    PrecReal pq(q, c.precision);
    for (auto k : ns) {
      PrecReal v = q_factorial(k, pq);
      c.report.add_row({i64(k), q, d(v), d(log(v))});
    }
  });
  qf->add_option("--n,--ns", ns)->required()->delimiter(',');
  qf->add_option("--q", q)->required();
}

struct ApproxArgs {
  std::vector<std::uint64_t> ns;
  double s = 0.5, a = 0.5, eps = 0.01, beta = 1.0, x = 0.5;
  std::size_t K = 1000;
  int power = 1;
  std::string convention = "derived";
};

inline void add_approx(CLI::App& app, Leaves& leaves, ApproxArgs& g) {
  CLI::App* verb = app.add_subcommand("approx", "closed-form estimates and constants");
  verb->fallthrough();
  verb->require_subcommand(1);

  auto log_estimate = [&](const char* name, const char* help, PrecReal (*f)(std::uint64_t, Precision)) {
    auto* sub = leaves.add(verb, name, help, [&g, f](Context& c) {
      c.report.columns = {"n", "log_estimate"};
      for (auto k : g.ns) c.report.add_row({i64(k), d(f(k, c.precision))});
    });
    sub->add_option("--n,--ns", g.ns)->required()->delimiter(',');
  };
  log_estimate("hardy-ramanujan", "ln of exp(pi sqrt(2n/3))/(4n sqrt 3)", hardy_ramanujan_estimate);
  log_estimate("prefactor", "ln of (24n)^{-1/4} exp(pi sqrt(2n/3))", prefactor_estimate);
  log_estimate("stirling", "ln of n^n e^-n sqrt(2 pi n)", stirling_estimate);

  auto* gam = leaves.add(verb, "gamma", "n! n^{s-1}/(s)_n", [&](Context& c) {
    c.report.columns = {"s", "n", "estimate"};
    for (auto k : g.ns) c.report.add_row({g.s, i64(k), d(gamma_limit_estimate(PrecReal(g.s, c.precision), k))});
  });
  gam->add_option("--s", g.s)->required();
  gam->add_option("--n,--ns", g.ns)->required()->delimiter(',');

  auto* qprod = leaves.add(verb, "q-product", "(a; e^-eps)_inf estimate", [&](Context& c) {
    c.report.columns = {"a", "eps", "estimate", "exact", "ratio"};
    PrecReal pa(g.a, c.precision), pe(g.eps, c.precision);
    PrecReal est = q_infinite_product_estimate(pa, pe);
    PrecReal ex = q_pochhammer(pa, exp(-pe), infinite).value;
    c.report.add_row({g.a, g.eps, d(est), d(ex), d(est / ex)});
  });
  qprod->add_option("--a", g.a)->required();
  qprod->add_option("--eps", g.eps)->required();

  auto q_estimate = [&](const char* name, const char* help, bool stirling_form) {
    auto* sub = leaves.add(verb, name, help, [&g, stirling_form](Context& c) {
      c.report.columns = {"beta", "n", "log_estimate"};
      for (auto k : g.ns) {
        QRegime reg(PrecReal(g.beta, c.precision), k);
        auto conv = convention_of(g.convention);
        c.report.add_row({g.beta, i64(k),
                          d(stirling_form ? q_stirling_estimate(reg, conv) : q_inverse_pochhammer_estimate(reg, conv))});
      }
    });
    sub->add_option("--beta", g.beta)->required();
    sub->add_option("--n,--ns", g.ns)->required()->delimiter(',');
    sub->add_option("--convention", g.convention)->check(CLI::IsMember({"derived", "printed"}));
  };
  q_estimate("q-inverse", "ln of the 1/(q;q)_n estimate at q = e^{-beta/n}", false);
  q_estimate("q-stirling", "ln of the [n]_q! estimate at q = e^{-beta/n}", true);

  auto* dl = leaves.add(verb, "dilog", "Li2(x) on [-1, 1]", [&](Context& c) {
    c.report.columns = {"x", "dilog"};
    c.report.add_row({g.x, d(dilog(PrecReal(g.x, c.precision)))});
  });
  dl->add_option("--x", g.x)->required();

  leaves.add(verb, "zeta3", "Apery's constant", [](Context& c) {
    c.report.columns = {"constant", "value", "digits"};
    PrecReal z = zeta3(c.precision);
    c.report.add_row({std::string("zeta3"), d(z), z.to_string()});
  });

  leaves.add(verb, "constants", "Bose-type integrals, closed form against quadrature", [](Context& c) {
    c.report.columns = {"integral", "closed_form", "quadrature", "difference"};
    auto row = [&](const char* name, const DualRoute& r) {
      c.report.add_row({std::string(name), d(r.closed_form), d(r.quadrature.value), d(r.difference())});
      c.report.add_check(std::string(name) + "_routes_agree", r.agree(), d(r.difference()),
                         d(r.quadrature.error_estimate));
    };
    row("x_over_expm1", bose_integral(1, c.precision));
    row("x2_over_expm1", bose_integral(2, c.precision));
    row("x_over_expm1_squared", bose_square_integral(c.precision));
    row("log_one_minus_exp", log_one_minus_exp_integral(c.precision));
  });

  auto series = [&](const char* name, const char* help, SeriesPartialSum (*f)(std::size_t, Precision)) {
    auto* sub = leaves.add(verb, name, help, [&g, f](Context& c) {
      c.report.columns = {"K", "value", "tail_bound"};
      auto s = f(g.K, c.precision);
      c.report.add_row({i64(s.terms_used), d(s.value), d(s.tail_bound)});
    });
    sub->add_option("--K", g.K)->required()->check(CLI::PositiveNumber);
  };
  series("sine-sum", "-sum ln(1 - 1/(4k^2)), limit ln(pi/2)", sine_product_log_sum);
  series("stirling-sum", "sum 2k atanh(1/2k) - 1, limit (1 - ln 2)/2", stirling_series_sum);
}

struct RatioArgs {
  std::vector<std::uint64_t> ns;
  double s = 0.5, beta = 1.0;
  std::string convention = "derived";
};

inline void add_ratio(CLI::App& app, Leaves& leaves, RatioArgs& g) {
  CLI::App* verb = app.add_subcommand("ratio", "estimate/exact ratio reports");
  verb->fallthrough();
  verb->require_subcommand(1);
  auto emit = [&g](Context& c, const RatioKind& kind) {
    c.report.columns = {"n", "exact_log", "approx_log", "ratio", "ratio_minus_1"};
    for (const auto& r : ratio_report(kind, g.ns, c.threads))
      c.report.add_row({i64(r.n), d(r.exact_log), d(r.approx_log), d(r.ratio), d(r.ratio - 1L)});
  };
  auto kind = [&](const char* name, const char* help, std::function<RatioKind(Context&)> make, bool s,
                  bool beta) {
    auto* sub = leaves.add(verb, name, help, [emit, make](Context& c) { emit(c, make(c)); });
    sub->add_option("--ns,--n", g.ns, "strictly increasing list")->required()->delimiter(',');
    if (s) sub->add_option("--s", g.s)->required();
    if (beta) {
      sub->add_option("--beta", g.beta)->required();
      sub->add_option("--convention", g.convention)->check(CLI::IsMember({"derived", "printed"}));
    }
  };
  kind("partition", "Hardy-Ramanujan estimate against p(n)", [](Context& c) { return RatioKind::partition(c.precision); },
       false, false);
  kind("stirling", "Stirling estimate against n!", [](Context& c) { return RatioKind::stirling(c.precision); }, false,
       false);
  kind("gamma", "gamma limit against Gamma(s)",
       [&g](Context& c) { return RatioKind::gamma(PrecReal(g.s, c.precision)); }, true, false);
  kind("q-pochhammer", "estimate against 1/(q;q)_n",
       [&g](Context& c) { return RatioKind::q_pochhammer(PrecReal(g.beta, c.precision), convention_of(g.convention)); },
       false, true);
  kind("q-factorial", "estimate against [n]_q!",
       [&g](Context& c) { return RatioKind::q_factorial(PrecReal(g.beta, c.precision), convention_of(g.convention)); },
       false, true);
}

struct SaddleArgs {
  std::uint64_t n = 100;
  double tau = 1, s = 1, delta = 0.3, t = 1, r = 0.5, eps = 0.01;
  int power = 1;
  std::size_t subdivisions = 12;
  double abs_tol = 1e-30, rel_tol = 1e-25;
};

inline void add_saddle(CLI::App& app, Leaves& leaves, SaddleArgs& g) {
  CLI::App* verb = app.add_subcommand("saddle", "contour integrals and Euler-Maclaurin sums");
  verb->fallthrough();
  verb->require_subcommand(1);
  auto cfg = [](Context& c, std::size_t subs, double abs_tol, double rel_tol) {
    QuadratureConfig q(subs, abs_tol, rel_tol, c.precision);
    q.threads = c.threads;
    return q;
  };
  auto integral_row = [](Context& c, const IntegralResult& res) {
    c.report.add_check("quadrature_converged", res.converged, d(res.error_estimate), 0, "error estimate");
  };

  auto* cauchy = leaves.add(verb, "cauchy", "p(n) from the Cauchy integral at the saddle radius",
                            [&g, cfg](Context& c) {
                              QuadratureConfig q = cfg(c, 10, 1e-6, 1e-40);
                              PartitionRegime reg(g.n, c.precision);
                              const std::size_t K = partition_cauchy_truncation(reg, q.abs_tolerance);
                              auto res = partition_cauchy_integral(g.n, K, q);
                              c.report.columns = {"n", "K_trunc", "value", "imag", "error_estimate", "rounded"};
                              BigNat exact = partition_count(g.n);
                              std::string rounded = "uncertified";
                              bool match = false;
                              try {
                                BigNat v = certify_integer(res);
                                rounded = v.to_string();
                                match = v == exact;
                              } catch (const QuadratureError&) {
                              }
                              c.report.add_row({i64(g.n), i64(K), d(res.value), d(res.imag),
                                                d(res.error_estimate), rounded});
                              c.report.add_check("certified_error_below_half", res.error_estimate < 0.5,
                                                 d(res.error_estimate), 0.5);
                              c.report.add_check("rounds_to_p_n", match, 0, 0, "p(n) = " + exact.to_string());
                            });
  cauchy->add_option("--n", g.n)->required()->check(CLI::Range(1, 100000));

  auto* theta = leaves.add(verb, "theta", "(1/2pi) ∫ e^{-in(x - tau sin x)} e^{-2n tau sin^2(x/2)} dx",
                           [&g, cfg, integral_row](Context& c) {
                             auto res = binomial_theta_integral(g.n, PrecReal(g.tau, c.precision),
                                                                cfg(c, g.subdivisions, 1e-40, 1e-30));
                             c.report.columns = {"n", "tau", "value", "scaled"};
                             c.report.add_row({i64(g.n), g.tau, d(res.value),
                                               d(res.value) * std::sqrt(2 * M_PI * static_cast<double>(g.n))});
                             integral_row(c, res);
                           });
  theta->add_option("--n", g.n)->required();
  theta->add_option("--tau", g.tau);
  theta->add_option("--subdivisions", g.subdivisions);

  auto* tau = leaves.add(verb, "tau", "the tau integral from n^-delta to infinity", [&g, cfg, integral_row](Context& c) {
    auto res = binomial_tau_integral(g.n, PrecReal(g.s, c.precision), PrecReal(g.delta, c.precision),
                                     cfg(c, 400, 1e-30, 1e-25));
    c.report.columns = {"n", "s", "delta", "value", "n_times_value"};
    c.report.add_row({i64(g.n), g.s, g.delta, d(res.value), d(res.value) * static_cast<double>(g.n)});
    integral_row(c, res);
  });
  tau->add_option("--n", g.n)->required();
  tau->add_option("--s", g.s);
  tau->add_option("--delta", g.delta);

  auto* inner = leaves.add(verb, "inner", "(1/2pi) ∫ e^{-in x} e^{t r e^{ix}} dx against (tr)^n/n!",
                           [&g, cfg, integral_row](Context& c) {
                             PrecReal t(g.t, c.precision), r(g.r, c.precision);
                             auto res = binomial_inner_integral_exact_check(g.n, t, r, cfg(c, 10, 1e-50, 1e-50));
                             PrecReal exact = pow(t * r, static_cast<long>(g.n)) / factorial(g.n).to_real(c.precision);
                             c.report.columns = {"n", "t", "r", "value", "exact", "error_estimate"};
                             c.report.add_row({i64(g.n), g.t, g.r, d(res.value), d(exact), d(res.error_estimate)});
                             integral_row(c, res);
                             c.report.add_check("matches_closed_form", abs(res.value - exact) <= res.error_estimate,
                                                d(abs(res.value - exact)), d(res.error_estimate));
                           });
  inner->add_option("--n", g.n)->required();
  inner->add_option("--t", g.t)->required();
  inner->add_option("--r", g.r)->required();

  auto* eml = leaves.add(verb, "em-log", "-sum ln(1 - e^{-eps k}) and its residual", [&g](Context& c) {
    PrecReal eps(g.eps, c.precision);
    PrecReal v = em_log_product_sum(eps);
    PrecReal res = v - square(const_pi(c.precision)) / (6L * eps) - log(eps / (2L * const_pi(c.precision))) / 2L;
    c.report.columns = {"eps", "sum", "residual"};
    c.report.add_row({g.eps, d(v), d(res)});
  });
  eml->add_option("--eps", g.eps)->required();

  auto* emm = leaves.add(verb, "em-mean", "sum_{k>=0} r e^{-k eps}/(1 - r e^{-k eps})", [&g](Context& c) {
    PrecReal v = em_mean_sum(PrecReal(g.r, c.precision), PrecReal(g.eps, c.precision));
    c.report.columns = {"r", "eps", "sum", "leading"};
    c.report.add_row({g.r, g.eps, d(v), -std::log1p(-g.r) / g.eps + 0.5 * g.r / (1 - g.r)});
  });
  emm->add_option("--r", g.r)->required();
  emm->add_option("--eps", g.eps)->required();

  auto* bose = leaves.add(verb, "bose-sum", "sum k^p r^k/(1 - r^k) at the saddle radius", [&g](Context& c) {
    PartitionRegime reg(g.n, c.precision);
    c.report.columns = {"n", "power", "sum"};
    c.report.add_row({i64(g.n), static_cast<std::int64_t>(g.power), d(weighted_bose_sum(g.power, reg))});
  });
  bose->add_option("--n", g.n)->required();
  bose->add_option("--power", g.power)->check(CLI::IsMember({1, 2}));

  auto* minor = leaves.add(verb, "minor-arc", "mean-field minor-arc exponent at theta = t eps",
                           [&g, cfg, integral_row](Context& c) {
                             PartitionRegime reg(g.n, c.precision);
                             PrecReal t(g.t, c.precision);
                             auto res = minor_arc_bound(reg, t, cfg(c, 200, 1e-30, 1e-25));
                             c.report.columns = {"n", "t", "bound", "mean_field_sum"};
                             c.report.add_row({i64(g.n), g.t, d(res.value), d(minor_arc_mean_field_sum(reg, t))});
                             integral_row(c, res);
                           });
  minor->add_option("--n", g.n)->required();
  minor->add_option("--t", g.t)->required();
}

struct SampleArgs {
  std::uint64_t n = 400;
  std::size_t samples = 100000, count = 1000000, K = 0, histogram = 0;
  double a = 0.3, beta = 1.0, theta = 0, margin = 0.2;
  unsigned m = 1;
};

inline void add_sample(CLI::App& app, Leaves& leaves, SampleArgs& g) {
  CLI::App* verb = app.add_subcommand("sample", "seeded Monte Carlo (requires --seed)");
  verb->fallthrough();
  verb->require_subcommand(1);

  auto* ex = leaves.add(verb, "exponentials", "Exp(1) draws by inversion", [&g](Context& c) {
    RngStream s = c.stream(0);
    auto xs = sample_exponentials(s, g.count);
    Moments mom;
    for (double x : xs) mom.add(x);
    auto st = SampleStats::from(mom);
    c.report.columns = stats_columns;
    stats_row(c.report, "T", st);
    c.report.add_check("mean_within_4se", std::abs(st.mean - 1) <= 4 * st.standard_error, (st.mean - 1) / st.standard_error, 4);
  });
  ex->add_option("--count", g.count)->check(CLI::PositiveNumber);

  auto* tilt = leaves.add(verb, "tilting", "E[e^{aT} T^m] against m!/(1-a)^{m+1}", [&g](Context& c) {
    auto t = tilting_check(g.a, g.m, g.samples, c.stream(1));
    c.report.columns = stats_columns;
    stats_row(c.report, "estimate_minus_exact", t.stats);
    c.report.add_check("difference_within_4se", t.within(4), t.z(), 4);
  });
  tilt->add_option("--a", g.a)->required();
  tilt->add_option("--m", g.m)->check(CLI::Range(0, 4));
  tilt->add_option("--samples", g.samples)->check(CLI::PositiveNumber);

  auto* part = leaves.add(verb, "partition", "sizes under the geometric product measure", [&g](Context& c) {
    PartitionRegime reg(g.n, c.precision);
    const std::size_t K = g.K ? g.K : sampler_truncation(reg);
    auto s = sample_partition_sizes(reg, K, g.samples, c.stream(2), g.histogram, c.threads);
    c.report.columns = stats_columns;
    stats_row(c.report, "size", s.size);
    const double mu = truncated_mean_size(reg, K);
    c.report.add_check("mean_matches_truncated_sum", std::abs(s.size.mean - mu) <= 4 * s.size.standard_error,
                       (s.size.mean - mu) / s.size.standard_error, 4, "K = " + std::to_string(K));
    c.report.add_check("mean_within_1pct_of_n", std::abs(s.size.mean / g.n - 1) <= 0.01, s.size.mean / g.n - 1,
                       0.01);
    if (g.histogram) {
      auto exact = truncated_size_distribution(reg, K, g.histogram);
      c.report.columns = {"size", "count", "frequency", "exact"};
      c.report.rows.clear();
      for (std::size_t m = 0; m <= g.histogram; ++m)
        c.report.add_row({i64(m), i64(s.histogram[m]), static_cast<double>(s.histogram[m]) / g.samples, exact[m]});
    }
  });
  part->add_option("--n", g.n)->required();
  part->add_option("--samples", g.samples)->check(CLI::PositiveNumber);
  part->add_option("--K", g.K, "truncation (default: tail mass below one part)");
  part->add_option("--histogram", g.histogram, "emit the size histogram 0..H instead");

  auto variance_rows = [](Context& c, const VarianceCheck& v) {
    c.report.columns = {"quantity", "count", "mean", "variance", "variance_se", "target", "finite_target",
                        "kurtosis_ratio"};
    c.report.add_row({std::string("S"), i64(v.stats.count), v.stats.mean, v.stats.variance, v.variance_se, v.target,
                      v.finite_target, v.kurtosis_ratio});
    c.report.add_check("variance_within_4se", v.variance_within(4), (v.stats.variance - v.target) / v.variance_se, 4);
    c.report.add_check("mean_within_4se", v.mean_within(4), v.stats.mean / v.stats.standard_error, 4);
  };
  auto* clt = leaves.add(verb, "clt", "variance of the weighted exponential sum", [&g, variance_rows](Context& c) {
    auto v = clt_weighted_sum_check(PartitionRegime(g.n, c.precision), g.samples, c.stream(3));
    variance_rows(c, v);
    c.report.add_check("kurtosis_within_5pct", v.kurtosis_within(0.05), v.kurtosis_ratio - 1, 0.05);
  });
  clt->add_option("--n", g.n)->required();
  clt->add_option("--samples", g.samples);

  auto* qclt = leaves.add(verb, "q-clt", "variance of the q-regime weighted sum", [&g, variance_rows](Context& c) {
    variance_rows(c, q_clt_variance_check(QRegime(PrecReal(g.beta, c.precision), g.n), g.samples, c.stream(4)));
  });
  qclt->add_option("--beta", g.beta)->required();
  qclt->add_option("--n", g.n)->required();
  qclt->add_option("--samples", g.samples);

  auto* minor = leaves.add(verb, "minor-arc", "Monte Carlo modulus of the tilted integrand", [&g](Context& c) {
    PartitionRegime reg(g.n, c.precision);
    QuadratureConfig q(200, 1e-20, 1e-20, c.precision);
    auto m = minor_arc_empirical(reg, PrecReal(g.theta, c.precision), g.samples, c.stream(5), q, g.margin);
    c.report.columns = {"theta", "log_mean", "exact_log_mean", "bound", "relative_mean", "relative_se"};
    c.report.add_row({g.theta, m.log_mean, m.exact_log_mean, m.bound, m.stats.mean, m.stats.standard_error});
    c.report.add_check("below_mean_field_bound", m.below_bound(), m.log_mean, -(1 - m.margin) * m.bound);
  });
  minor->add_option("--n", g.n)->required();
  minor->add_option("--theta", g.theta)->required();
  minor->add_option("--samples", g.samples);
  minor->add_option("--margin", g.margin);
}

inline void add_verify(CLI::App& app, Leaves& leaves, std::vector<std::string>& which) {
  auto* v = leaves.add(&app, "verify", "run acceptance criteria: all, or a list of numbers", [&which](Context& c) {
    std::vector<int> ids;
    for (const auto& w : which) {
      if (w == "all") {
        for (int i = 1; i <= criterion_count; ++i) ids.push_back(i);
        continue;
      }
      int id = 0;
      try {
        id = std::stoi(w);
      } catch (const std::exception&) {
        throw UsageError("verify: expected 'all' or a criterion number, got '" + w + "'");
      }
      if (id < 1 || id > criterion_count) throw UsageError("verify: criterion out of range: " + w);
      ids.push_back(id);
    }
    c.report.columns = {"criterion", "pass", "deciding_check", "measured", "tolerance"};
    for (int id : ids) {
      *c.log << "running criterion " << id << " ..." << std::endl;
      auto r = run_criterion(id, *c.seed);
      const std::string key = "criterion_" + std::to_string(id) + "_" + r.name;
      const auto& h = r.headline();
      c.report.add_row({key, r.pass(), h.name, h.measured, h.tolerance});
      for (const auto& chk : r.checks)
        c.report.diagnostics.push_back({key + "." + chk.name, chk.pass, chk.measured, chk.tolerance, chk.detail});
    }
  });
  v->add_option("which", which, "all | criterion numbers")->required();
}

inline std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

}  // namespace detail

/// Parses and runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"asympartita: exact and asymptotic partition-function numerics", "asympartita"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string);

  std::string format = "table";
  std::optional<unsigned long> bits;
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
  unsigned threads = default_thread_count();
  app.add_option("--format", format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--precision", bits, "working precision in bits (default $" + std::string(precision_env) + " or 256)");
  app.add_option("--seed", seed, "64-bit seed for Monte Carlo");
  app.add_flag("--no-timestamp", no_timestamp, "omit the wall-clock timestamp");
  app.add_option("--threads", threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);

  detail::Leaves leaves;
  std::vector<std::uint64_t> exact_ns;
  double exact_a = 0, exact_q = 0;
  detail::ApproxArgs approx;
  detail::RatioArgs ratio;
  detail::SaddleArgs saddle;
  detail::SampleArgs sample;
  std::vector<std::string> which;
  detail::add_exact(app, leaves, exact_ns, exact_a, exact_q);
  detail::add_approx(app, leaves, approx);
  detail::add_ratio(app, leaves, ratio);
  detail::add_saddle(app, leaves, saddle);
  detail::add_sample(app, leaves, sample);
  detail::add_verify(app, leaves, which);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_string << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Context ctx;
  ctx.log = &err;
  try {
    if (!bits) {
      if (const char* env = std::getenv(precision_env); env && *env) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end || v == 0) throw UsageError(std::string(precision_env) + " must be a positive integer");
        bits = v;
      }
    }
    try {
      ctx.precision = Precision{bits.value_or(256)};
    } catch (const DomainError& e) {
      throw UsageError(std::string("--precision: ") + e.what());
    }
    const std::string& verb = leaves.verb();
    if (verb == "sample" && !seed) throw UsageError("sample requires --seed");
    if (verb == "verify" && !seed) seed = 42;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  ctx.seed = seed;
  ctx.threads = threads;
  ctx.report.command = detail::join(args);
  ctx.report.seed = seed;
  ctx.report.precision_bits = ctx.precision.bits();
  if (!no_timestamp) ctx.report.timestamp = utc_timestamp();

  try {
    leaves.chosen()(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Domain and quadrature failures are results, not usage errors.
    ctx.report.add_check("completed", false, 0, 0, e.what());
  }
  const OutputFormat f = format == "csv" ? OutputFormat::csv : format == "json" ? OutputFormat::json : OutputFormat::table;
  out << render(ctx.report, f);
  return ctx.report.all_pass() ? 0 : 1;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace asympartita::cli

#endif  // ASYMPARTITA_CLI_HPP
