#ifndef ASYMPARTITA_PREC_REAL_HPP
#define ASYMPARTITA_PREC_REAL_HPP

// Precision-configurable real scalar on top of MPFR.
//
// Every PrecReal carries its own working precision. Binary operations round
// to the larger precision of the two operands; mixed operations with builtin
// scalars use the PrecReal operand's precision. A NaN is never stored: any
// operation that would produce one throws DomainError instead.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace asympartita {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Working precision in bits. Never below 64.
class Precision {
 public:
  static constexpr unsigned long default_bits = 256;
  static constexpr unsigned long min_bits = 64;

  constexpr Precision() = default;
  constexpr explicit Precision(unsigned long bits) : bits_(bits) {
    if (bits < min_bits) throw DomainError("precision_bits must be >= 64");
  }

  constexpr unsigned long bits() const { return bits_; }
  constexpr Precision plus(unsigned long guard) const { return Precision{bits_ + guard}; }

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  unsigned long bits_ = default_bits;
};

inline Precision max(Precision a, Precision b) { return a < b ? b : a; }

/// Number of bits needed to represent x (x >= 1), used for guard-bit sizing.
inline unsigned long bit_width_of(unsigned long long x) {
  unsigned long w = 0;
  while (x != 0) {
    ++w;
    x >>= 1;
  }
  return w;
}

class PrecReal {
 public:
  PrecReal() : PrecReal(Precision{}) {}

  explicit PrecReal(Precision p) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(p.bits()));
    mpfr_set_zero(v_, 1);
  }

  explicit PrecReal(long x, Precision p = {}) : PrecReal(p) { mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit PrecReal(int x, Precision p = {}) : PrecReal(static_cast<long>(x), p) {}
  explicit PrecReal(unsigned long x, Precision p = {}) : PrecReal(p) {
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }
  explicit PrecReal(unsigned long long x, Precision p = {})
      : PrecReal(static_cast<unsigned long>(x), p) {}

  explicit PrecReal(double x, Precision p = {}) : PrecReal(p) {
    if (std::isnan(x)) throw DomainError("PrecReal cannot hold NaN");
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  PrecReal(const mpz_class& z, Precision p) : PrecReal(p) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  PrecReal(const mpq_class& q, Precision p) : PrecReal(p) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  /// Parses a decimal literal ("0.5", "1e-3"). Throws DomainError on junk.
  static PrecReal parse(std::string_view text, Precision p = {}) {
    PrecReal r(p);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a real number: '" + s + "'");
    r.check("parse");
    return r;
  }

  PrecReal(const PrecReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  PrecReal(PrecReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  PrecReal& operator=(const PrecReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  PrecReal& operator=(PrecReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~PrecReal() { mpfr_clear(v_); }

  Precision precision() const { return Precision{static_cast<unsigned long>(mpfr_get_prec(v_))}; }
  unsigned long precision_bits() const { return static_cast<unsigned long>(mpfr_get_prec(v_)); }

  /// Same value rounded to precision p.
  PrecReal rounded(Precision p) const {
    PrecReal r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr raw() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Unit in the last place relative to |value| at this precision: 2^(exp - prec).
  PrecReal ulp() const {
    PrecReal r(precision());
    if (is_zero()) {
      mpfr_set_ui_2exp(r.v_, 1, -static_cast<long>(precision_bits()), MPFR_RNDN);
    } else {
      mpfr_set_ui_2exp(r.v_, 1, mpfr_get_exp(v_) - static_cast<long>(precision_bits()), MPFR_RNDN);
    }
    return r;
  }

  PrecReal& operator+=(const PrecReal& o) { return bin(o, mpfr_add, "add"); }
  PrecReal& operator-=(const PrecReal& o) { return bin(o, mpfr_sub, "sub"); }
  PrecReal& operator*=(const PrecReal& o) { return bin(o, mpfr_mul, "mul"); }
  PrecReal& operator/=(const PrecReal& o) { return bin(o, mpfr_div, "div"); }

  PrecReal& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return check("add"); }
  PrecReal& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return check("sub"); }
  PrecReal& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return check("mul"); }
  PrecReal& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return check("div"); }
  PrecReal& operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return check("add"); }
  PrecReal& operator-=(double x) { mpfr_sub_d(v_, v_, x, MPFR_RNDN); return check("sub"); }
  PrecReal& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return check("mul"); }
  PrecReal& operator/=(double x) { mpfr_div_d(v_, v_, x, MPFR_RNDN); return check("div"); }
  PrecReal& operator+=(int x) { return *this += static_cast<long>(x); }
  PrecReal& operator-=(int x) { return *this -= static_cast<long>(x); }
  PrecReal& operator*=(int x) { return *this *= static_cast<long>(x); }
  PrecReal& operator/=(int x) { return *this /= static_cast<long>(x); }

  PrecReal operator-() const {
    PrecReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const PrecReal& a, const PrecReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const PrecReal& a, const PrecReal& b) {
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const PrecReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const PrecReal& a, double b) {
    int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  /// Throws DomainError if the stored value is NaN.
  PrecReal& check(const char* what) {
    if (mpfr_nan_p(v_)) throw DomainError(std::string("NaN produced by ") + what);
    return *this;
  }

 private:
  using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  PrecReal& bin(const PrecReal& o, BinFn f, const char* what) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    f(v_, v_, o.v_, MPFR_RNDN);
    return check(what);
  }

  mpfr_t v_;
};

inline PrecReal operator+(PrecReal a, const PrecReal& b) { return a += b; }
inline PrecReal operator-(PrecReal a, const PrecReal& b) { return a -= b; }
inline PrecReal operator*(PrecReal a, const PrecReal& b) { return a *= b; }
inline PrecReal operator/(PrecReal a, const PrecReal& b) { return a /= b; }

template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator+(PrecReal a, S b) { return a += b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator-(PrecReal a, S b) { return a -= b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator*(PrecReal a, S b) { return a *= b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator/(PrecReal a, S b) { return a /= b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator+(S b, PrecReal a) { return a += b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator*(S b, PrecReal a) { return a *= b; }
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator-(S b, const PrecReal& a) {
  PrecReal r(a.precision());
  mpfr_sub_d(r.raw(), a.get(), static_cast<double>(b), MPFR_RNDN);
  mpfr_neg(r.raw(), r.get(), MPFR_RNDN);
  return std::move(r.check("sub"));
}
template <typename S>
  requires std::is_arithmetic_v<S>
inline PrecReal operator/(S b, const PrecReal& a) {
  PrecReal r(a.precision());
  mpfr_d_div(r.raw(), static_cast<double>(b), a.get(), MPFR_RNDN);
  return std::move(r.check("div"));
}

namespace detail {
using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline PrecReal apply(const PrecReal& x, UnaryFn f, const char* what) {
  PrecReal r(x.precision());
  f(r.raw(), x.get(), MPFR_RNDN);
  return std::move(r.check(what));
}
}  // namespace detail

inline PrecReal exp(const PrecReal& x) { return detail::apply(x, mpfr_exp, "exp"); }
inline PrecReal expm1(const PrecReal& x) { return detail::apply(x, mpfr_expm1, "expm1"); }
inline PrecReal log(const PrecReal& x) { return detail::apply(x, mpfr_log, "log"); }
inline PrecReal log1p(const PrecReal& x) { return detail::apply(x, mpfr_log1p, "log1p"); }
inline PrecReal sqrt(const PrecReal& x) { return detail::apply(x, mpfr_sqrt, "sqrt"); }
inline PrecReal sin(const PrecReal& x) { return detail::apply(x, mpfr_sin, "sin"); }
inline PrecReal cos(const PrecReal& x) { return detail::apply(x, mpfr_cos, "cos"); }
inline PrecReal sinh(const PrecReal& x) { return detail::apply(x, mpfr_sinh, "sinh"); }
inline PrecReal cosh(const PrecReal& x) { return detail::apply(x, mpfr_cosh, "cosh"); }
inline PrecReal tanh(const PrecReal& x) { return detail::apply(x, mpfr_tanh, "tanh"); }
inline PrecReal atanh(const PrecReal& x) { return detail::apply(x, mpfr_atanh, "atanh"); }
inline PrecReal abs(const PrecReal& x) { return detail::apply(x, mpfr_abs, "abs"); }
inline PrecReal floor(const PrecReal& x) { return detail::apply(x, mpfr_rint_floor, "floor"); }
inline PrecReal ceil(const PrecReal& x) { return detail::apply(x, mpfr_rint_ceil, "ceil"); }
inline PrecReal square(const PrecReal& x) { return detail::apply(x, mpfr_sqr, "sqr"); }

inline PrecReal pow(const PrecReal& x, const PrecReal& y) {
  PrecReal r(max(x.precision(), y.precision()));
  mpfr_pow(r.raw(), x.get(), y.get(), MPFR_RNDN);
  return std::move(r.check("pow"));
}
inline PrecReal pow(const PrecReal& x, long k) {
  PrecReal r(x.precision());
  mpfr_pow_si(r.raw(), x.get(), k, MPFR_RNDN);
  return std::move(r.check("pow"));
}
inline PrecReal min(const PrecReal& a, const PrecReal& b) { return a < b ? a : b; }
inline PrecReal max(const PrecReal& a, const PrecReal& b) { return a < b ? b : a; }

/// sin and cos of x in one call.
inline std::pair<PrecReal, PrecReal> sin_cos(const PrecReal& x) {
  PrecReal s(x.precision()), c(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.get(), MPFR_RNDN);
  s.check("sin_cos");
  c.check("sin_cos");
  return {std::move(s), std::move(c)};
}

inline PrecReal const_pi(Precision p = {}) {
  PrecReal r(p);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline PrecReal const_log2(Precision p = {}) {
  PrecReal r(p);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}
/// 2^e at precision p.
inline PrecReal pow2(long e, Precision p = {}) {
  PrecReal r(p);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

/// Complex pair of PrecReals.
struct PrecComplex {
  PrecReal re;
  PrecReal im;

  PrecComplex() = default;
  explicit PrecComplex(Precision p) : re(p), im(p) {}
  PrecComplex(PrecReal r, PrecReal i) : re(std::move(r)), im(std::move(i)) {}

  Precision precision() const { return max(re.precision(), im.precision()); }

  PrecComplex& operator+=(const PrecComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  PrecComplex& operator-=(const PrecComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  PrecComplex& operator*=(const PrecReal& s) {
    re *= s;
    im *= s;
    return *this;
  }
  PrecComplex& operator/=(const PrecReal& s) {
    re /= s;
    im /= s;
    return *this;
  }
};

/// a <- a * b without temporaries beyond one scratch value.
inline void mul_assign(PrecComplex& a, const PrecComplex& b, PrecReal& scratch) {
  // (ar + i ai)(br + i bi) = (ar br - ai bi) + i (ar bi + ai br)
  mpfr_fmms(scratch.raw(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(a.im.raw(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_swap(a.re.raw(), scratch.raw());
  a.re.check("complex mul");
  a.im.check("complex mul");
}

inline PrecComplex operator*(const PrecComplex& a, const PrecComplex& b) {
  PrecComplex r(a);
  PrecReal scratch(a.precision());
  mul_assign(r, b, scratch);
  return r;
}

inline PrecComplex operator/(const PrecComplex& a, const PrecComplex& b) {
  PrecReal den = square(b.re) + square(b.im);
  PrecComplex r(a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im);
  r /= den;
  return r;
}

inline PrecReal norm_abs(const PrecComplex& z) {
  PrecReal r(z.precision());
  mpfr_hypot(r.raw(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

/// e^{i phase} scaled by `modulus`.
inline PrecComplex polar(const PrecReal& modulus, const PrecReal& phase) {
  auto [s, c] = sin_cos(phase);
  return PrecComplex(modulus * c, modulus * s);
}

}  // namespace asympartita

#endif  // ASYMPARTITA_PREC_REAL_HPP
