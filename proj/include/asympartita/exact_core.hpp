#ifndef ASYMPARTITA_EXACT_CORE_HPP
#define ASYMPARTITA_EXACT_CORE_HPP

// Exact and high-precision reference values: partition counts, factorials,
// Newton-binomial coefficients, q-Pochhammer products and Jackson q-factorials.

#include "asympartita/bignat.hpp"
#include "asympartita/prec_real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace asympartita {

/// A partition as a finitely supported multiplicity map k -> nu(k).
class Partition {
 public:
  using Multiplicities = std::map<std::uint64_t, std::uint64_t>;

  Partition() = default;

  /// Zero counts are dropped; a part size of 0 is rejected.
  explicit Partition(Multiplicities nu) {
    for (auto it = nu.begin(); it != nu.end();) {
      if (it->first == 0) throw DomainError("partition part sizes must be >= 1");
      if (it->second == 0) {
        it = nu.erase(it);
        continue;
      }
      size_ += it->first * it->second;
      ++it;
    }
    nu_ = std::move(nu);
  }

  const Multiplicities& multiplicities() const { return nu_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t multiplicity(std::uint64_t k) const {
    auto it = nu_.find(k);
    return it == nu_.end() ? 0 : it->second;
  }
  std::uint64_t part_count() const {
    std::uint64_t c = 0;
    for (const auto& [k, m] : nu_) c += m;
    return c;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  Multiplicities nu_;
  std::uint64_t size_ = 0;
};

/// p(0), ..., p(n_max) by Euler's pentagonal-number recurrence.
inline std::vector<BigNat> partition_count_table(std::size_t n_max) {
  std::vector<mpz_class> p(n_max + 1);
  p[0] = 1;
  mpz_class plus, minus;
  for (std::size_t m = 1; m <= n_max; ++m) {
    plus = 0;
    minus = 0;
    for (std::size_t k = 1;; ++k) {
      std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      std::size_t g2 = g1 + k;  // k(3k+1)/2
      mpz_class& acc = (k % 2 == 1) ? plus : minus;
      mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), p[m - g1].get_mpz_t());
      if (g2 <= m) mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), p[m - g2].get_mpz_t());
    }
    mpz_sub(p[m].get_mpz_t(), plus.get_mpz_t(), minus.get_mpz_t());
  }
  std::vector<BigNat> out;
  out.reserve(n_max + 1);
  for (auto& v : p) out.push_back(BigNat::from_mpz(std::move(v)));
  return out;
}

inline BigNat partition_count(std::size_t n) { return partition_count_table(n).back(); }

inline constexpr std::size_t bruteforce_limit = 64;

namespace detail {
// Visits every multiplicity vector (nu(k), ..., nu(1)) with sum_j j nu(j) = remaining.
inline std::uint64_t enumerate_multiplicities(std::uint64_t remaining, std::uint64_t k) {
  if (k == 1) return 1;  // nu(1) = remaining is forced
  std::uint64_t count = 0;
  for (std::uint64_t used = 0; used <= remaining; used += k)
    count += enumerate_multiplicities(remaining - used, k - 1);
  return count;
}
}  // namespace detail

/// p(n) by exhaustive enumeration; independent oracle for partition_count.
inline BigNat partition_count_bruteforce(std::size_t n) {
  if (n > bruteforce_limit) throw DomainError("partition_count_bruteforce: n must be <= 64");
  if (n == 0) return BigNat(1);
  return BigNat(detail::enumerate_multiplicities(n, n));
}

inline BigNat factorial(std::size_t n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return BigNat::from_mpz(std::move(z));
}

/// Newton-binomial coefficient (s+n-1)_n / n! = prod_{j<n} (s+j)/(j+1), at the
/// precision of s. Guard bits keep the relative error near one ulp.
inline PrecReal rising_coeff(const PrecReal& s, std::size_t n) {
  if (!(s > 0.0)) throw DomainError("rising_coeff: s must be > 0");
  const Precision work = s.precision().plus(bit_width_of(n) + 16);
  PrecReal sw = s.rounded(work);
  PrecReal acc(1L, work);
  PrecReal t(work);
  for (std::size_t j = 0; j < n; ++j) {
    mpfr_add_ui(t.raw(), sw.get(), j, MPFR_RNDN);
    mpfr_mul(acc.raw(), acc.get(), t.get(), MPFR_RNDN);
    mpfr_div_ui(acc.raw(), acc.get(), j + 1, MPFR_RNDN);
  }
  return acc.rounded(s.precision());
}

/// Exact-rational Newton-binomial coefficient for rational s > 0.
inline mpq_class rising_coeff(const mpq_class& s, std::size_t n) {
  if (sgn(s) <= 0) throw DomainError("rising_coeff: s must be > 0");
  mpq_class acc = 1;
  for (std::size_t j = 0; j < n; ++j) {
    acc *= s + static_cast<unsigned long>(j);
    acc /= static_cast<unsigned long>(j + 1);
  }
  acc.canonicalize();
  return acc;
}

struct Infinite {};
inline constexpr Infinite infinite{};

/// Value together with a rigorous bound on its absolute error.
struct CertifiedReal {
  PrecReal value;
  PrecReal error_bound;
  std::size_t terms = 0;
};

namespace detail {
inline void check_q_args(const PrecReal& a, const PrecReal& q) {
  if (!(abs(a) < 1.0)) throw DomainError("q_pochhammer: requires |a| < 1");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q_pochhammer: requires 0 < q < 1");
}

// Extra bits absorbing cancellation in 1 - a q^k when a or q is near 1.
inline unsigned long q_guard_bits(const PrecReal& a, const PrecReal& q, std::size_t n) {
  auto bits_of_inverse_gap = [](const PrecReal& x) {
    PrecReal gap = 1.0 - abs(x);
    return static_cast<unsigned long>(std::max(0.0, -std::log2(gap.to_double())) + 1);
  };
  return bit_width_of(n) + bits_of_inverse_gap(a) + bits_of_inverse_gap(q) + 16;
}

inline PrecReal q_product(const PrecReal& a, const PrecReal& q, std::size_t n, Precision work) {
  PrecReal aw = a.rounded(work), qw = q.rounded(work);
  PrecReal acc(1L, work), term(aw), factor(work);
  for (std::size_t k = 0; k < n; ++k) {
    mpfr_ui_sub(factor.raw(), 1, term.get(), MPFR_RNDN);
    mpfr_mul(acc.raw(), acc.get(), factor.get(), MPFR_RNDN);
    mpfr_mul(term.raw(), term.get(), qw.get(), MPFR_RNDN);
  }
  return acc;
}
}  // namespace detail

/// (a;q)_n = prod_{k<n} (1 - a q^k).
inline PrecReal q_pochhammer(const PrecReal& a, const PrecReal& q, std::size_t n) {
  detail::check_q_args(a, q);
  const Precision p = max(a.precision(), q.precision());
  return detail::q_product(a, q, n, p.plus(detail::q_guard_bits(a, q, n))).rounded(p);
}

/// Truncation index K = ceil((bits ln 2 + ln(1/(1-q))) / (-ln q)).
inline std::size_t q_pochhammer_truncation(const PrecReal& q, Precision p) {
  PrecReal qw = q.rounded(p.plus(32));
  PrecReal num = const_log2(qw.precision()) * static_cast<long>(p.bits()) - log(1.0 - qw);
  PrecReal k = ceil(num / (-log(qw)));
  if (k > 1e9) throw DomainError("q_pochhammer: q too close to 1 for an infinite product");
  return static_cast<std::size_t>(k.to_double());
}

/// (a;q)_infinity truncated at K factors, with a certified error bound that
/// covers both the geometric tail and rounding.
inline CertifiedReal q_pochhammer(const PrecReal& a, const PrecReal& q, Infinite) {
  detail::check_q_args(a, q);
  const Precision p = max(a.precision(), q.precision());
  const std::size_t K = q_pochhammer_truncation(q, p);
  const Precision work = p.plus(detail::q_guard_bits(a, q, K));
  PrecReal value = detail::q_product(a, q, K, work);

  // sum_{k>=K} |ln(1 - a q^k)| <= |a| q^K / ((1-q)(1-|a|)); relative error <= 2 tail.
  PrecReal qw = q.rounded(work), aa = abs(a).rounded(work);
  PrecReal tail = aa * pow(qw, static_cast<long>(K)) / ((1.0 - qw) * (1.0 - aa));
  PrecReal rel = 2.0 * tail + pow2(-static_cast<long>(p.bits()), work);
  PrecReal err = abs(value) * rel;
  return CertifiedReal{value.rounded(p), err.rounded(Precision{64}), K};
}

/// Jackson q-factorial [n]_q! = prod_{k<=n} [k]_q with [k]_q = 1 + q + ... + q^{k-1}.
inline PrecReal q_factorial(std::size_t n, const PrecReal& q) {
  if (n < 1) throw DomainError("q_factorial: n must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q_factorial: requires 0 < q < 1");
  const Precision p = q.precision();
  const Precision work = p.plus(bit_width_of(n) + 16);
  PrecReal qw = q.rounded(work);
  PrecReal acc(1L, work), qnum(1L, work);
  for (std::size_t k = 2; k <= n; ++k) {
    mpfr_mul(qnum.raw(), qnum.get(), qw.get(), MPFR_RNDN);
    mpfr_add_ui(qnum.raw(), qnum.get(), 1, MPFR_RNDN);
    mpfr_mul(acc.raw(), acc.get(), qnum.get(), MPFR_RNDN);
  }
  return acc.rounded(p);
}

}  // namespace asympartita

#endif  // ASYMPARTITA_EXACT_CORE_HPP
