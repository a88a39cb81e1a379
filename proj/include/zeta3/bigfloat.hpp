#pragma once

// Thin RAII layer over MPFR reals plus a complex pair type. Precision is an
// explicit per-value property; binary operations produce results at the
// wider of the two operand precisions.

#include <mpfr.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "zeta3/rational.hpp"

namespace zeta3 {

inline mpfr_prec_t digits_to_prec(long digits) {
  if (digits < 1) throw std::domain_error("digits_to_prec: digits < 1");
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 32);
}

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_long(long x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_rational(const Rational& x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat from_integer(const Integer& x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string to_string(long digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

namespace detail {
inline mpfr_prec_t joint_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace detail

#define ZETA3_BIGFLOAT_BINOP(op, fn)                              \
  inline BigFloat operator op(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(detail::joint_prec(a, b));                         \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);                     \
    return r;                                                     \
  }
ZETA3_BIGFLOAT_BINOP(+, mpfr_add)
ZETA3_BIGFLOAT_BINOP(-, mpfr_sub)
ZETA3_BIGFLOAT_BINOP(*, mpfr_mul)
ZETA3_BIGFLOAT_BINOP(/, mpfr_div)
#undef ZETA3_BIGFLOAT_BINOP

inline BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline bool operator<(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmp(a.get(), b.get()) < 0;
}
inline bool operator>(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmp(a.get(), b.get()) > 0;
}

#define ZETA3_BIGFLOAT_UNFN(name, fn)        \
  inline BigFloat name(const BigFloat& a) {  \
    BigFloat r(a.prec());                    \
    fn(r.get(), a.get(), MPFR_RNDN);         \
    return r;                                \
  }
ZETA3_BIGFLOAT_UNFN(abs, mpfr_abs)
ZETA3_BIGFLOAT_UNFN(sqrt, mpfr_sqrt)
ZETA3_BIGFLOAT_UNFN(exp, mpfr_exp)
ZETA3_BIGFLOAT_UNFN(log, mpfr_log)
ZETA3_BIGFLOAT_UNFN(log10, mpfr_log10)
ZETA3_BIGFLOAT_UNFN(cos, mpfr_cos)
ZETA3_BIGFLOAT_UNFN(sin, mpfr_sin)
#undef ZETA3_BIGFLOAT_UNFN

inline BigFloat pow_si(const BigFloat& a, long e) {
  BigFloat r(a.prec());
  mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDN);
  return r;
}

struct BigComplex {
  BigFloat re, im;

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  static BigComplex from_doubles(double r, double i, mpfr_prec_t prec) {
    return BigComplex(BigFloat::from_double(r, prec),
                      BigFloat::from_double(i, prec));
  }
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re + b.re, a.im + b.im);
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re - b.re, a.im - b.im);
}
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline BigComplex operator*(const BigFloat& s, const BigComplex& a) {
  return BigComplex(s * a.re, s * a.im);
}

inline BigFloat norm(const BigComplex& a) {
  return a.re * a.re + a.im * a.im;
}
inline BigFloat abs(const BigComplex& a) { return sqrt(norm(a)); }

inline BigComplex inverse(const BigComplex& a) {
  BigFloat n = norm(a);
  if (n.is_zero()) throw std::domain_error("BigComplex: division by zero");
  return BigComplex(a.re / n, -a.im / n);
}
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  return a * inverse(b);
}

// e^z = e^Re(z) (cos Im(z) + i sin Im(z))
inline BigComplex cexp(const BigComplex& z) {
  BigFloat m = exp(z.re);
  return BigComplex(m * cos(z.im), m * sin(z.im));
}

inline BigComplex cpow_si(const BigComplex& z, long e) {
  mpfr_prec_t prec = std::max(z.re.prec(), z.im.prec());
  BigComplex base = z;
  long n = e < 0 ? -e : e;
  BigComplex acc(BigFloat::from_long(1, prec), BigFloat::from_long(0, prec));
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return e < 0 ? inverse(acc) : acc;
}

}  // namespace zeta3
