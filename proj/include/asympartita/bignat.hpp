#ifndef ASYMPARTITA_BIGNAT_HPP
#define ASYMPARTITA_BIGNAT_HPP

#include "asympartita/prec_real.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace asympartita {

/// Arbitrary-precision nonnegative integer. Arithmetic is exact.
class BigNat {
 public:
  BigNat() = default;
  explicit BigNat(std::uint64_t v) { mpz_import(z_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v); }

  static BigNat from_mpz(mpz_class z) {
    if (sgn(z) < 0) throw DomainError("BigNat cannot be negative");
    BigNat b;
    b.z_ = std::move(z);
    return b;
  }

  static BigNat parse(std::string_view text) {
    mpz_class z;
    std::string s(text);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("not a nonnegative integer: '" + s + "'");
    z.set_str(s, 10);
    return from_mpz(std::move(z));
  }

  const mpz_class& value() const { return z_; }
  std::string to_string() const { return z_.get_str(10); }
  std::size_t decimal_digits() const { return z_.get_str(10).size(); }

  bool fits_u64() const { return mpz_sizeinbase(z_.get_mpz_t(), 2) <= 64; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw DomainError("BigNat does not fit in 64 bits");
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z_.get_mpz_t());
    return v;
  }

  PrecReal to_real(Precision p = {}) const { return PrecReal(z_, p); }

  /// Natural logarithm; requires a positive value.
  PrecReal log(Precision p = {}) const {
    if (sgn(z_) == 0) throw DomainError("log of zero");
    PrecReal r(z_, p.plus(8));
    return asympartita::log(r).rounded(p);
  }

  BigNat& operator+=(const BigNat& o) {
    z_ += o.z_;
    return *this;
  }
  BigNat& operator*=(const BigNat& o) {
    z_ *= o.z_;
    return *this;
  }
  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }

  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a.z_, b.z_) == 0; }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    int c = cmp(a.z_, b.z_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const BigNat& a, std::uint64_t b) { return a == BigNat(b); }

 private:
  mpz_class z_;
};

}  // namespace asympartita

#endif  // ASYMPARTITA_BIGNAT_HPP
