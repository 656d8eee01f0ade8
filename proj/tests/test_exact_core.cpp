#include "asympartita/exact_core.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asympartita;

TEST(PartitionCount, SmallValues) {
  EXPECT_EQ(partition_count(0), 1u);
  EXPECT_EQ(partition_count(5), 7u);
  EXPECT_EQ(partition_count(100), 190569292u);
}

TEST(PartitionCount, FrozenLargeValues) {
  // Computed once by the recurrence and frozen; any change is a regression.
  EXPECT_EQ(partition_count(200).to_string(), "3972999029388");
  EXPECT_EQ(partition_count(500).to_string(), "2300165032574323995027");
  EXPECT_EQ(partition_count(1000).to_string(), "24061467864032622473692149727991");
}

TEST(PartitionCount, TableMatchesBruteForceUpTo60) {
  auto table = partition_count_table(60);
  for (std::size_t n = 0; n <= 60; ++n) EXPECT_EQ(table[n], partition_count_bruteforce(n)) << "n=" << n;
}

TEST(PartitionCount, BruteForceSmallAndGuard) {
  EXPECT_EQ(partition_count_bruteforce(1), 1u);
  EXPECT_EQ(partition_count_bruteforce(4), 5u);
  EXPECT_EQ(partition_count_bruteforce(0), 1u);
  EXPECT_NO_THROW(partition_count_bruteforce(64));
  EXPECT_THROW(partition_count_bruteforce(65), DomainError);
}

TEST(PartitionCount, GeneratingFunctionAtHalf) {
  // sum_{n<=40} p(n) 2^-n against prod_{k<=K} (1 - 2^-k)^-1. The series tail is
  // below sum_{n>40} e^{pi sqrt(2n/3)} 2^-n and the product tail below 2^{1-K}.
  const Precision p{256};
  auto table = partition_count_table(40);
  PrecReal series(p), half(0.5, p), power(1L, p);
  for (std::size_t n = 0; n <= 40; ++n) {
    series += table[n].to_real(p) * power;
    power *= half;
  }
  PrecReal prod(1L, p), rk(1L, p);
  const std::size_t K = 300;
  for (std::size_t k = 1; k <= K; ++k) {
    rk *= half;
    prod /= 1.0 - rk;
  }
  double tail = 0;
  for (int n = 41; n < 400; ++n) tail += std::exp(M_PI * std::sqrt(2.0 * n / 3.0) - n * std::log(2.0));
  tail += 2.0 * std::pow(2.0, -static_cast<double>(K)) * prod.to_double();
  EXPECT_LT(std::abs((series - prod).to_double()), tail);
  EXPECT_GT(std::abs((series - prod).to_double()), 0.0);
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1u);
  EXPECT_EQ(factorial(5), 120u);
  EXPECT_EQ(factorial(20), 2432902008176640000ull);
  BigNat acc(1);
  for (std::uint64_t k = 1; k <= 30; ++k) acc *= BigNat(k);
  EXPECT_EQ(factorial(30), acc);
}

TEST(BigNat, ParseAndOrder) {
  EXPECT_EQ(BigNat::parse("190569292"), 190569292u);
  EXPECT_THROW(BigNat::parse("-3"), DomainError);
  EXPECT_THROW(BigNat::parse(""), DomainError);
  EXPECT_LT(BigNat(3), BigNat(4));
  EXPECT_EQ(BigNat(7) + BigNat(5), 12u);
  EXPECT_THROW(BigNat(0).log(), DomainError);
}

TEST(PrecReal, RejectsNaNAndLowPrecision) {
  EXPECT_THROW(PrecReal(std::nan("")), DomainError);
  EXPECT_THROW(Precision{32}, DomainError);
  PrecReal z(0L);
  EXPECT_THROW(z / z, DomainError);
  EXPECT_THROW(PrecReal::parse("1.5x"), DomainError);
  EXPECT_EQ(PrecReal::parse("0.25"), 0.25);
}

TEST(RisingCoeff, TrivialCases) {
  EXPECT_EQ(rising_coeff(PrecReal(1L), 7), 1.0);
  EXPECT_EQ(rising_coeff(PrecReal(2L), 3), 4.0);
  EXPECT_THROW(rising_coeff(PrecReal(0L), 3), DomainError);
}

TEST(RisingCoeff, HalfMatchesExactRational) {
  // (1/2)_10/10! = C(20,10)/4^10 = 184756/1048576
  const Precision p{256};
  PrecReal v = rising_coeff(PrecReal(0.5, p), 10);
  PrecReal exact(mpq_class(184756, 1048576), p);
  EXPECT_LE(abs(v - exact), exact * pow2(-248, p));
  EXPECT_EQ(rising_coeff(mpq_class(1, 2), 10), mpq_class(46189, 262144));  // 184756/4^10 reduced
}

TEST(RisingCoeff, RationalRecurrenceProperty) {
  testing_support::Lcg gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    mpq_class s(static_cast<long>(gen.below(40) + 1), static_cast<long>(gen.below(12) + 1));
    s.canonicalize();
    const std::size_t n = gen.below(30);
    mpq_class lhs = rising_coeff(s, n + 1);
    mpq_class rhs = rising_coeff(s, n) * (s + static_cast<unsigned long>(n)) / static_cast<unsigned long>(n + 1);
    EXPECT_EQ(lhs, rhs) << s.get_str() << " n=" << n;
    // Floating route agrees with the rational one to the stated precision.
    const Precision p{192};
    PrecReal fl = rising_coeff(PrecReal(s, p), n);
    PrecReal ex(lhs * static_cast<unsigned long>(n + 1) / (s + static_cast<unsigned long>(n)), p);
    EXPECT_LE(abs(fl - ex), abs(ex) * pow2(-184, p));
  }
}

TEST(QPochhammer, TrivialCases) {
  EXPECT_EQ(q_pochhammer(PrecReal(0L), PrecReal(0.5), 10), 1.0);
  EXPECT_EQ(q_pochhammer(PrecReal(0.5), PrecReal(0.5), 1), 0.5);
  EXPECT_THROW(q_pochhammer(PrecReal(1L), PrecReal(0.5), 3), DomainError);
  EXPECT_THROW(q_pochhammer(PrecReal(0.5), PrecReal(1L), 3), DomainError);
  EXPECT_THROW(q_pochhammer(PrecReal(-1.5), PrecReal(0.5), infinite), DomainError);
}

TEST(QPochhammer, InfiniteProductCertifiedAcrossPrecisions) {
  auto lo = q_pochhammer(PrecReal(0.5, Precision{128}), PrecReal(0.9, Precision{128}), infinite);
  auto hi = q_pochhammer(PrecReal(0.5, Precision{256}), PrecReal(0.9, Precision{256}), infinite);
  // Frozen double value of (0.5; 0.9)_inf.
  EXPECT_NEAR(hi.value.to_double(), 0.0027905465671710932, 1e-18);
  EXPECT_LE(abs(hi.value - lo.value), lo.error_bound);
  EXPECT_LT(hi.error_bound, lo.error_bound);
  EXPECT_LT(hi.error_bound, hi.value.ulp() * 8L);
}

TEST(QPochhammer, InfiniteProductEulerIdentity) {
  // (q;q)_inf = sum_k (-1)^k q^{k(3k-1)/2} over all integers k (pentagonal theorem).
  const Precision p{256};
  PrecReal q(0.7, p);
  auto prod = q_pochhammer(q, q, infinite);
  PrecReal series(1L, p);
  for (long k = 1; k < 200; ++k) {
    PrecReal t = pow(q, k * (3 * k - 1) / 2) + pow(q, k * (3 * k + 1) / 2);
    if (k % 2) series -= t;
    else series += t;
  }
  EXPECT_LE(abs(prod.value - series), prod.error_bound + series.ulp() * 64L);
}

TEST(QFactorial, Values) {
  const Precision p{256};
  EXPECT_EQ(q_factorial(1, PrecReal(0.3, p)), 1.0);
  EXPECT_EQ(q_factorial(3, PrecReal(0.5, p)), 2.625);
  EXPECT_THROW(q_factorial(3, PrecReal(1.0, p)), DomainError);
  EXPECT_THROW(q_factorial(0, PrecReal(0.5, p)), DomainError);
}

TEST(QFactorial, MatchesPochhammerRoute) {
  const Precision p{256};
  for (std::size_t n : {1u, 2u, 7u, 50u, 300u}) {
    PrecReal q = exp(-PrecReal(1L, p) / static_cast<double>(n));
    if (n == 50) q = exp(PrecReal(-1.0 / 50, p));
    PrecReal lhs = q_factorial(n, q) * pow(1.0 - q, static_cast<long>(n));
    PrecReal rhs = q_pochhammer(q, q, n);
    EXPECT_LE(abs(lhs - rhs), rhs.ulp() * 4L) << "n=" << n;
  }
}

TEST(Precision, DoublingStaysInsideCertifiedError) {
  for (double a : {0.1, 0.5, 0.9}) {
    for (double q : {0.3, 0.95}) {
      auto lo = q_pochhammer(PrecReal(a, Precision{128}), PrecReal(q, Precision{128}), infinite);
      auto hi = q_pochhammer(PrecReal(a, Precision{256}), PrecReal(q, Precision{256}), infinite);
      EXPECT_LE(abs(hi.value - lo.value), lo.error_bound) << a << " " << q;
    }
  }
  PrecReal a128 = rising_coeff(PrecReal(0.5, Precision{128}), 1000);
  PrecReal a256 = rising_coeff(PrecReal(0.5, Precision{256}), 1000);
  EXPECT_LE(abs(a256 - a128), a128 * pow2(-120, Precision{128}));
}

TEST(Partition, Invariants) {
  Partition part(Partition::Multiplicities{{1, 2}, {3, 1}, {5, 0}});
  EXPECT_EQ(part.size(), 5u);
  EXPECT_EQ(part.multiplicity(5), 0u);
  EXPECT_EQ(part.part_count(), 3u);
  EXPECT_EQ(part.multiplicities().size(), 2u);
  EXPECT_THROW(Partition(Partition::Multiplicities{{0, 1}}), DomainError);
}
